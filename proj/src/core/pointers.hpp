#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "skeleton.hpp"

namespace skellab {

// A pointer structure over the pure arena: moves labeled by their depth,
// non-initial moves justified by an earlier move one level shallower. Even
// labels are Opponent moves, odd labels Player moves; consecutive moves
// alternate. At most one initial move, at position 0.
struct Move {
    uint32_t label = 0;
    std::optional<uint32_t> justifier;
};

struct PointerStructure {
    std::vector<Move> moves;

    size_t size() const { return moves.size(); }
};

bool is_valid_play(const PointerStructure& s);

// P-view / O-view of the prefix s[0..upto), as ascending move indices.
std::vector<uint32_t> p_view(const PointerStructure& s, size_t upto);
std::vector<uint32_t> o_view(const PointerStructure& s, size_t upto);
inline std::vector<uint32_t> p_view(const PointerStructure& s) { return p_view(s, s.size()); }
inline std::vector<uint32_t> o_view(const PointerStructure& s) { return o_view(s, s.size()); }

// Every P-ending prefix's last move points within the P-view of its
// predecessor prefix, and dually.
bool is_visible(const PointerStructure& s);

struct StarParams {
    uint32_t n = 0;
    uint32_t p = 0;
    uint32_t d = 2;
};

struct StarResult {
    uint64_t n_d = 0;            // maximal play length
    uint64_t maximal_count = 0;  // number of maximal plays
    uint64_t nodes = 0;          // DFS nodes visited
    std::vector<PointerStructure> plays;  // maximal plays, if collected
};

// Exhaustive DFS over all plays of n*_d p: visible plays with labels <= d
// where each P-ending prefix has |P-view| <= 2n and each O-ending prefix has
// |O-view| <= 2p+1. Maximality = no legal extension. Throws BudgetExceeded
// when the node budget runs out.
StarResult enumerate_star(const StarParams& params, uint64_t node_budget = 10000000,
                          bool collect_plays = false);

// ---- pointed plays ------------------------------------------------------------

struct PointedPlay {
    PointerStructure play;
    size_t index = 0;
};

// Def 3.4 residual measures: maxima over later prefixes whose view
// computation reaches s_i.
uint64_t residual_size(const PointedPlay& pp);
uint64_t residual_cosize(const PointedPlay& pp);

// Longest chain of later moves justified back to s_i, counted in pointer hops.
uint64_t residual_depth(const PointedPlay& pp);

// Same-polarity moves of the mover's view of s_{<i} (context), and the
// opposite player's dual view (co-context).
std::vector<uint32_t> context_of(const PointedPlay& pp);
std::vector<uint32_t> cocontext_of(const PointedPlay& pp);

// Def 3.7 trace / co-trace certification, experimental: each context entry
// must certify against some child (canonical skeletons do not preserve the
// positional pairing the paper uses).
bool certify_trace(const PointedPlay& pp, const SkelPtr& a);
bool certify_cotrace(const PointedPlay& pp, const SkelPtr& a);

// (s,i) in a *_d b.
bool certify_interaction(const PointedPlay& pp, const SkelPtr& a, uint64_t d, const SkelPtr& b);

// The two reduction rules on triples (a, d, b) of section 3.2.4.
std::vector<std::tuple<SkelPtr, uint64_t, SkelPtr>> triple_reducts(const SkelPtr& a, uint64_t d,
                                                                   const SkelPtr& b);

} // namespace skellab
