#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "types.hpp"

namespace skellab {

// Variables are opaque integer ids with an attached display name. Fresh ids
// come from a monotone counter local to each operation; a term's binder ids
// are globally distinct (Barendregt convention is an invariant of every
// operation that produces terms).
using VarId = uint32_t;

enum class TermKind { Var, Const, Abs, App };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
    TermKind kind;
    TypePtr type;      // type of this node

    // Var: id/name of the occurrence. Abs: id/name of the binder.
    VarId var = 0;
    std::string name;

    TermPtr body;      // Abs
    TermPtr fn, arg;   // App

    static TermPtr mk_var(VarId id, std::string name, TypePtr type);
    static TermPtr mk_const(TypePtr type);
    static TermPtr mk_abs(VarId binder, std::string name, TypePtr binder_type, TermPtr body);
    static TermPtr mk_app(TermPtr fn, TermPtr arg);  // throws IllTyped on mismatch

    TypePtr binder_type() const { return type->dom(); }  // Abs only
};

// Path from the root of a term to a subterm node.
enum class Step : uint8_t { Fn, Arg, Body };
using OccPath = std::vector<Step>;

std::string path_to_string(const OccPath& p);

TermPtr resolve(const TermPtr& term, const OccPath& path);
TermPtr replace_at(const TermPtr& term, const OccPath& path, const TermPtr& replacement);

// ---- static queries -------------------------------------------------------

using TypeContext = std::map<VarId, TypePtr>;

// Re-derives the type of every node and checks consistency with the ambient
// context; returns the root type.
TypePtr typecheck(const TermPtr& term, const TypeContext& ctx = {});

std::set<VarId> free_vars(const TermPtr& term);
bool is_closed(const TermPtr& term);

// Largest var id occurring anywhere in the term (binders and occurrences).
VarId max_var_id(const TermPtr& term);

// de Bruijn structural comparison (names and ids ignored, types compared).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// ---- hygiene --------------------------------------------------------------

// Copy with every binder renamed to a fresh id drawn from `counter`
// (pre-incremented); free variables are untouched.
TermPtr rename_binders(const TermPtr& term, VarId& counter);

// Alpha-equivalent term in which all binder ids are fresh and pairwise
// distinct.
TermPtr barendregt(const TermPtr& term);

// Replaces the single occurrence at `occ` (which must be a Var node) by a
// hygienically renamed copy of `replacement`. All other occurrences are left
// alone.
TermPtr substitute_occurrence(const TermPtr& term, const OccPath& occ, const TermPtr& replacement);

// Capture-avoiding substitution of every occurrence of `x` (each inserted
// copy gets fresh binders).
TermPtr substitute_all(const TermPtr& term, VarId x, const TermPtr& replacement);

// ---- measures -------------------------------------------------------------

struct TermMeasures {
    uint64_t level = 0;
    uint64_t order = 0;
    uint64_t length = 0;
    uint64_t height = 0;
    uint64_t depth = 0;        // Def 5.32; empty max at a bare variable is 1
    uint64_t localHeight = 0;  // lh; empty max at a bare variable is 0
};

TermMeasures measures(const TermPtr& term);

uint64_t term_length(const TermPtr& term);
uint64_t term_height(const TermPtr& term);
uint64_t term_depth(const TermPtr& term);
uint64_t term_local_height(const TermPtr& term);
uint64_t term_order(const TermPtr& term);
uint64_t node_count(const TermPtr& term);

// ---- spine view -----------------------------------------------------------

// Every term reads as  head M_1 ... M_n  with head not an application:
// * M_1...M_n | x_0 M_1...M_n | \x.M (n = 0) | (\x.M) M_1...M_n.
struct Spine {
    TermPtr head;
    std::vector<TermPtr> args;  // outermost application last
};

Spine spine_of(const TermPtr& term);

// As above but with root-relative paths for the head and each argument.
struct SpinePaths {
    TermPtr head;
    OccPath head_path;
    std::vector<std::pair<TermPtr, OccPath>> args;
};

SpinePaths spine_paths(const TermPtr& term, const OccPath& base = {});

// All subterm nodes, preorder, with their paths.
void for_each_subterm(const TermPtr& term,
                      const std::function<void(const TermPtr&, const OccPath&)>& f);

} // namespace skellab
