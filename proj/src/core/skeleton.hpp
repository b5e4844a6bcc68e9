#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace skellab {

// Interaction skeletons: finite trees with node and edge labels in the
// naturals, written n[{d1}a1,...,{dp}ap]. Kept in canonical form (children
// sorted by (edge, child), exact duplicates merged); canonicalization is
// norm-preserving since permutation and duplicate merging give mutual
// embeddings.
class Skeleton;
using SkelPtr = std::shared_ptr<const Skeleton>;

class Skeleton {
public:
    struct Edge {
        uint64_t label;
        SkelPtr child;
    };

    static SkelPtr atom(uint64_t n);
    static SkelPtr make(uint64_t root, std::vector<Edge> children);  // canonicalizes

    uint64_t root() const { return root_; }
    const std::vector<Edge>& children() const { return children_; }
    size_t hash() const { return hash_; }

    std::string to_string() const;

private:
    Skeleton() = default;
    uint64_t root_ = 0;
    std::vector<Edge> children_;
    size_t hash_ = 0;
};

bool skel_eq(const SkelPtr& a, const SkelPtr& b);
// Total order used for canonical child sorting.
int skel_cmp(const SkelPtr& a, const SkelPtr& b);

// a with a new child b grafted at the root with edge label d.
SkelPtr graft(const SkelPtr& a, uint64_t d, const SkelPtr& b);

// Root is the max (join) or sum of the roots; children concatenated. The
// empty family yields the atomic skeleton 0.
SkelPtr join(const std::vector<SkelPtr>& as);
SkelPtr skel_sum(const std::vector<SkelPtr>& as);

// One head-rewriting step per eligible child (root >= 1, edge >= 1):
//   n[{d1}a1,...,{dp}ap] ~> a_i ._{d_i - 1} (n-1)[{d1}a1,...,{dp}ap]
// Duplicates (from merged children) appear once.
std::vector<SkelPtr> reducts(const SkelPtr& a);

struct SkelMeasures {
    uint64_t order = 0;  // maximal edge label; 0 if edgeless
    uint64_t max = 0;    // maximal node label
    uint64_t depth = 0;  // root has depth 1
};

SkelMeasures skel_measures(const SkelPtr& a);

// Label-wise domination: root(a) <= root(b) and every child of a embeds in
// some child of b with a smaller-or-equal edge label.
bool embeds(const SkelPtr& a, const SkelPtr& b);

// Thread-like skeleton T(d,o,m); requires d,o,m >= 1.
SkelPtr thread_like(uint64_t d, uint64_t o, uint64_t m);

struct SearchBudget {
    uint64_t max_states = 1000000;  // distinct skeletons memoized
};

// Exact length of the longest reduction sequence, by memoized exhaustive
// search over canonical skeletons. Throws BudgetExceeded if the state budget
// is exhausted. Norms are non-elementary in general; the budget is part of
// the interface.
uint64_t norm(const SkelPtr& a, const SearchBudget& budget = {});

// As above but reusing/filling a caller-provided memo table across calls.
class NormMemo {
public:
    uint64_t compute(const SkelPtr& a, const SearchBudget& budget);
    size_t size() const { return table_.size(); }

private:
    struct Hash {
        size_t operator()(const SkelPtr& s) const { return s->hash(); }
    };
    struct Eq {
        bool operator()(const SkelPtr& a, const SkelPtr& b) const { return skel_eq(a, b); }
    };
    std::unordered_map<SkelPtr, uint64_t, Hash, Eq> table_;
};

} // namespace skellab
