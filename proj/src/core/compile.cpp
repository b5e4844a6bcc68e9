#include "compile.hpp"

#include "error.hpp"
#include "transforms.hpp"

namespace skellab {

SkelPtr interpret(const TermPtr& term, const BsEnv& rho) {
    Spine s = spine_of(term);
    switch (s.head->kind) {
        case TermKind::Const:
            return Skeleton::atom(0);
        case TermKind::Var: {
            std::vector<SkelPtr> interps;
            interps.reserve(s.args.size());
            for (const auto& a : s.args) interps.push_back(interpret(a, rho));
            SkelPtr base = skel_sum({Skeleton::atom(1), join(interps)});
            auto it = rho.find(s.head->var);
            if (it == rho.end()) return base;
            uint64_t lv = static_cast<uint64_t>(s.head->type->level());
            return graft(base, lv + 1, it->second);
        }
        case TermKind::Abs: {
            if (s.args.empty()) return interpret(s.head->body, rho);
            BsEnv ext = rho;
            ext[s.head->var] = interpret(s.args[0], rho);
            TermPtr contracted = s.head->body;
            for (size_t i = 1; i < s.args.size(); i++)
                contracted = Term::mk_app(contracted, s.args[i]);
            return interpret(contracted, ext);
        }
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

BsEnv env_to_bsenv(const EnvPtr& env) {
    BsEnv out;
    if (!env) return out;
    for (const auto& [x, c] : *env) out[x] = interpret(c.term, env_to_bsenv(c.env));
    return out;
}

SimulationReport check_simulation(const TermPtr& term, uint64_t budget) {
    if (!is_closed(term)) fail(Err::PreconditionFailed, "closed");
    if (!term->type->is_ground()) fail(Err::PreconditionFailed, "ground");
    if (!is_eta_long(term)) fail(Err::PreconditionFailed, "etaLong");
    if (!scope_report(term).locallyScoped) fail(Err::PreconditionFailed, "locallyScoped");

    LhrTrace tr = lhr_run(term, budget);
    if (tr.haltReason == HaltReason::BudgetExceeded)
        fail(Err::BudgetExceeded, "lhr budget exhausted in check_simulation");

    SimulationReport rep;
    rep.steps = tr.length();
    rep.interpretations.reserve(rep.steps + 1);
    for (size_t i = 0; i <= rep.steps; i++)
        rep.interpretations.push_back(interpret(tr.term_at(i)));
    rep.ok = true;
    for (size_t i = 0; i < rep.steps; i++) {
        const SkelPtr& cur = rep.interpretations[i];
        const SkelPtr& next = rep.interpretations[i + 1];
        SkelPtr witness;
        for (const SkelPtr& r : reducts(cur)) {
            if (embeds(next, r)) {
                witness = r;
                break;
            }
        }
        if (!witness) {
            rep.ok = false;
            rep.failStep = i;
            break;
        }
        rep.witnesses.push_back(witness);
    }
    return rep;
}

} // namespace skellab
