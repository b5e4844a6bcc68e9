#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "reduction.hpp"
#include "term.hpp"

namespace skellab {

// ---- eta machinery ----------------------------------------------------------

// Deficiency df(M): quantifies the missing eta-expansions. df(M) = 0 iff M is
// eta-long in the generalized-redex sense of Def 5.13.
uint64_t deficiency(const TermPtr& term);
bool is_eta_long(const TermPtr& term);

// Single eta-expansion of the subterm at `path` (must have arrow type):
// S : A->B becomes \y:A. S y with y fresh.
TermPtr eta_expand_at(const TermPtr& term, const OccPath& path);

// All single eta-expansions of the term, leftmost-outermost order.
std::vector<TermPtr> all_eta_expansions(const TermPtr& term);

// One restricted eta-expansion (preserves the generalized-redex count), at
// the leftmost-outermost admissible position; nullopt when eta-long.
std::optional<TermPtr> eta_restricted_step(const TermPtr& term);

// Fixpoint of eta_restricted_step; the result has deficiency 0.
TermPtr eta_long_normalize(const TermPtr& term);

// ---- local scope --------------------------------------------------------------

struct ScopeReport {
    std::set<VarId> activeVars;
    std::set<VarId> passiveVars;
    bool locallyScoped = true;
    bool stronglyLocallyScoped = true;
    // ls violations under Def 5.20: a generalized redex together with a
    // passive variable free in its argument.
    std::vector<std::pair<PrimeRedex, VarId>> violations;
};

ScopeReport scope_report(const TermPtr& term);

// ---- lambda lifting -----------------------------------------------------------

// One ->_\lambda_l step (Figure 4), determinized: the lift fires at the
// outermost applicable redex spine, lifting the free variable of M_1 with the
// smallest id; otherwise reduction descends body-side through the contracted
// spine (only legal when M_1 is closed), then into M_1, then into the
// arguments of variable- or constant-headed spines.
std::optional<TermPtr> lambda_lift_step(const TermPtr& term);

// Fixpoint of lambda_lift_step; the result is strongly locally scoped.
// The budget caps the number of steps (termination is guaranteed by the
// binding-distance measure; the budget is a safety net).
TermPtr lambda_lift_normalize(const TermPtr& term, uint64_t budget = 100000);

// Multiset of binding distances of all variable occurrences; strictly
// decreases (multiset order) along every lambda-lift step.
std::multiset<uint64_t> binding_distances(const TermPtr& term);

// ---- variable expansion ------------------------------------------------------

// exp(M): eta-expands every variable occurrence to full arity, leaving
// constants alone. Afterwards lh <= 2 and depth <= height(input).
TermPtr expand_variables(const TermPtr& term);

// ---- weighted measures -------------------------------------------------------

struct WeightedMeasures {
    uint64_t weightedOrder = 0;       // ord'
    uint64_t weightedLocalHeight = 0; // lh'
    std::set<VarId> carrierVars;
    std::set<VarId> localVars;
    uint64_t deficiency = 0;
    std::multiset<uint64_t> bindingDistances;
};

WeightedMeasures weighted_measures(const TermPtr& term);

// ---- closing -----------------------------------------------------------------

// Free variables become constants of the same type; the result is then
// applied to constants until it has ground type.
TermPtr ground_close(const TermPtr& term);

// ---- beta helpers (for the monotonicity suites) -------------------------------

std::vector<TermPtr> all_beta_reducts(const TermPtr& term);

} // namespace skellab
