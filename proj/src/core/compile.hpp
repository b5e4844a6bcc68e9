#pragma once

#include <map>
#include <optional>
#include <vector>

#include "reduction.hpp"
#include "skeleton.hpp"
#include "term.hpp"

namespace skellab {

// bs-environment: partial map from variables to skeletons (the rho of the
// interpretation).
using BsEnv = std::map<VarId, SkelPtr>;

// The skeleton [[M]]_rho, by the five clauses of Def 5.23; the variable
// clause grafts rho(x) with edge label lv(x)+1. Defined on all terms; the
// simulation guarantees hold for generalized game situations only.
SkelPtr interpret(const TermPtr& term, const BsEnv& rho = {});

// [[sigma]]: pointwise [[sigma_1(x)]]_{[[sigma_2(x)]]}.
BsEnv env_to_bsenv(const EnvPtr& env);

struct SimulationReport {
    bool ok = false;
    size_t steps = 0;
    std::optional<size_t> failStep;
    std::vector<SkelPtr> interpretations;  // [[M_i]] for each trace term
    std::vector<SkelPtr> witnesses;        // reduct a_i with [[M_{i+1}]] embedded
};

// Walks the lhr trace of a generalized game situation (closed, ground,
// eta-long, locally scoped — checked first, PreconditionFailed otherwise) and
// witnesses each step by a reduct a of the current interpretation with
// [[next]] embedded in a (the relaxed simulation of Prop 5.31).
SimulationReport check_simulation(const TermPtr& term, uint64_t budget);

} // namespace skellab
