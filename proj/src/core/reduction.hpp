#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "term.hpp"

namespace skellab {

// A prime redex (\x, N): the binder is identified by its id (unique under
// hygiene), the argument by its path from the root.
struct PrimeRedex {
    VarId binder;
    OccPath argumentPath;
};

// Head occurrence: path of the leftmost Var or Const leaf. Head paths only
// ever descend through Fn and Body.
OccPath head_occurrence_path(const TermPtr& term);
bool head_is_constant(const TermPtr& term);

// The four clauses of Def 5.1. Redexes are listed spine-outermost first.
std::vector<PrimeRedex> prime_redexes(const TermPtr& term);

// Prime redexes of all subterms (each binder pairs with at most one
// argument; returned deduplicated, ordered by binder id).
std::vector<PrimeRedex> generalized_redexes(const TermPtr& term);

// Number of distinct generalized redexes (used by the eta machinery).
size_t generalized_redex_count(const TermPtr& term);

enum class HaltReason { HeadConstant, HeadFreeOrUnmatched, BudgetExceeded };

struct LhrStep {
    TermPtr term;               // term before the step
    PrimeRedex firedRedex;
    OccPath substitutedOccurrence;
};

struct LhrTrace {
    std::vector<LhrStep> steps;
    TermPtr terminal;
    HaltReason haltReason = HaltReason::HeadConstant;

    size_t length() const { return steps.size(); }
    TermPtr term_at(size_t i) const {  // i in [0, length()]
        return i < steps.size() ? steps[i].term : terminal;
    }
};

// One linear head reduction step: the head occurrence, when it is a variable
// bound by a prime redex (\x, N), is replaced by a fresh copy of N. Returns
// nullopt when no step applies (halt is a normal outcome).
std::optional<TermPtr> lhr_step(const TermPtr& term);

LhrTrace lhr_run(const TermPtr& term, uint64_t budget);

// ---- closures and the environment machine (Def 5.28 / Lemma 5.29) ---------

struct Closure;
using EnvPtr = std::shared_ptr<const std::map<VarId, Closure>>;

struct Closure {
    TermPtr term;
    EnvPtr env;  // may be null for the empty environment
};

EnvPtr empty_env();
EnvPtr env_bind(const EnvPtr& env, VarId x, Closure c);
const Closure* env_lookup(const EnvPtr& env, VarId x);

// Is every inner environment a sub-map of the outer one (Def 5.28 flatness)?
bool is_flat(const EnvPtr& env);

// Executes the ->_sigma reduction. With the empty environment the produced
// step count and residual terms coincide with lhr_run (Lemma 5.29).
LhrTrace machine_run(const Closure& closure, uint64_t budget);

// ---- beta ------------------------------------------------------------------

// Leftmost-outermost beta-normalization; the budget counts contractions.
TermPtr beta_normalize(const TermPtr& term, uint64_t budget);

// n iff the (beta-normal) term is alpha-equivalent to \f:o->o.\x:o.f^n(x).
std::optional<uint64_t> numeral_value(const TermPtr& term);

} // namespace skellab
