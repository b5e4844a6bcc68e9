#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "skeleton.hpp"
#include "term.hpp"

namespace skellab {

// Deterministic random corpora for the property and acceptance suites.
class TermGen {
public:
    explicit TermGen(uint64_t seed) : rng_(seed) {}

    // Closed term of the given type, roughly bounded in size.
    TermPtr closed(const TypePtr& goal, int fuel);

    // Closed ground term.
    TermPtr closed_ground(int fuel) { return closed(Type::ground(), fuel); }

    TypePtr random_type(int max_level, int max_size);

    std::mt19937_64& rng() { return rng_; }

private:
    struct Binding {
        VarId id;
        TypePtr type;
    };

    TermPtr gen(std::vector<Binding>& ctx, const TypePtr& goal, int fuel);

    std::mt19937_64 rng_;
    VarId counter_ = 0;
};

// Closed well-typed terms with <= max_nodes nodes (ground type, redex-rich).
std::vector<TermPtr> corpus_closed(uint64_t seed, size_t count, int max_nodes);

// Generalized game situations: random closed ground terms pushed through
// ground_close, expand_variables, lambda_lift_normalize, eta_long_normalize;
// every stage postcondition is asserted.
std::vector<TermPtr> corpus_game_situations(uint64_t seed, size_t count);

// Closed terms of numeral type beta-normalizing to numerals <= max_value.
std::vector<TermPtr> corpus_numeral_terms(uint64_t seed, size_t count, uint64_t max_value = 32);

// Random skeletons within the given measure bounds.
std::vector<SkelPtr> random_skeletons(uint64_t seed, size_t count, uint64_t max_order,
                                      uint64_t max_depth, uint64_t max_label);

// Pairs (a, b) with a embedded in b by construction (b random, a a weakening).
std::vector<std::pair<SkelPtr, SkelPtr>> random_embedded_pairs(uint64_t seed, size_t count,
                                                               uint64_t max_order,
                                                               uint64_t max_depth,
                                                               uint64_t max_label);

} // namespace skellab
