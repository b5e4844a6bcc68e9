#include "reduction.hpp"

#include <algorithm>

#include "error.hpp"

namespace skellab {

OccPath head_occurrence_path(const TermPtr& term) {
    OccPath p;
    TermPtr cur = term;
    while (true) {
        switch (cur->kind) {
            case TermKind::Var:
            case TermKind::Const:
                return p;
            case TermKind::Abs:
                p.push_back(Step::Body);
                cur = cur->body;
                break;
            case TermKind::App:
                p.push_back(Step::Fn);
                cur = cur->fn;
                break;
        }
    }
}

bool head_is_constant(const TermPtr& term) {
    return resolve(term, head_occurrence_path(term))->kind == TermKind::Const;
}

namespace {

// Prime redexes of the virtual spine  head A_1 ... A_n  where the args carry
// real root-relative paths. Def 5.1:
//   * M_1...M_n, x_0 M_1...M_n  -> none
//   \x.M'                       -> those of M'
//   (\x.M') M_1...M_n           -> (\x, M_1) plus those of M' M_2...M_n
void primes_spine(const TermPtr& head, const OccPath& head_path,
                  std::vector<std::pair<TermPtr, OccPath>> args,
                  std::vector<PrimeRedex>& out) {
    if (head->kind == TermKind::Var || head->kind == TermKind::Const) return;
    if (head->kind == TermKind::Abs) {
        if (args.empty()) {
            OccPath p = head_path;
            p.push_back(Step::Body);
            SpinePaths sp = spine_paths(head->body, p);
            primes_spine(sp.head, sp.head_path, sp.args, out);
            return;
        }
        out.push_back({head->var, args.front().second});
        // Contract: pair the body's own spine with the remaining arguments.
        OccPath p = head_path;
        p.push_back(Step::Body);
        SpinePaths sp = spine_paths(head->body, p);
        std::vector<std::pair<TermPtr, OccPath>> rest = sp.args;
        rest.insert(rest.end(), args.begin() + 1, args.end());
        primes_spine(sp.head, sp.head_path, rest, out);
        return;
    }
    fail(Err::DomainError, "unreachable");
}

} // namespace

std::vector<PrimeRedex> prime_redexes(const TermPtr& term) {
    std::vector<PrimeRedex> out;
    SpinePaths sp = spine_paths(term, {});
    primes_spine(sp.head, sp.head_path, sp.args, out);
    return out;
}

std::vector<PrimeRedex> generalized_redexes(const TermPtr& term) {
    std::map<VarId, OccPath> found;
    for_each_subterm(term, [&](const TermPtr& sub, const OccPath& base) {
        SpinePaths sp = spine_paths(sub, base);
        std::vector<PrimeRedex> ps;
        primes_spine(sp.head, sp.head_path, sp.args, ps);
        for (auto& pr : ps) found.emplace(pr.binder, pr.argumentPath);
    });
    std::vector<PrimeRedex> out;
    out.reserve(found.size());
    for (auto& [b, p] : found) out.push_back({b, p});
    return out;
}

size_t generalized_redex_count(const TermPtr& term) { return generalized_redexes(term).size(); }

std::optional<TermPtr> lhr_step(const TermPtr& term) {
    OccPath hp = head_occurrence_path(term);
    TermPtr head = resolve(term, hp);
    if (head->kind == TermKind::Const) return std::nullopt;
    for (const PrimeRedex& pr : prime_redexes(term)) {
        if (pr.binder == head->var) {
            TermPtr argument = resolve(term, pr.argumentPath);
            return substitute_occurrence(term, hp, argument);
        }
    }
    return std::nullopt;  // head variable free or not in any prime redex
}

LhrTrace lhr_run(const TermPtr& term, uint64_t budget) {
    LhrTrace tr;
    TermPtr cur = term;
    for (uint64_t i = 0; i < budget; i++) {
        OccPath hp = head_occurrence_path(cur);
        TermPtr head = resolve(cur, hp);
        if (head->kind == TermKind::Const) {
            tr.terminal = cur;
            tr.haltReason = HaltReason::HeadConstant;
            return tr;
        }
        std::optional<PrimeRedex> fired;
        for (const PrimeRedex& pr : prime_redexes(cur)) {
            if (pr.binder == head->var) { fired = pr; break; }
        }
        if (!fired) {
            tr.terminal = cur;
            tr.haltReason = HaltReason::HeadFreeOrUnmatched;
            return tr;
        }
        TermPtr argument = resolve(cur, fired->argumentPath);
        TermPtr next = substitute_occurrence(cur, hp, argument);
        tr.steps.push_back({cur, *fired, hp});
        cur = next;
    }
    tr.terminal = cur;
    tr.haltReason = HaltReason::BudgetExceeded;
    return tr;
}

// ---- machine ----------------------------------------------------------------

EnvPtr empty_env() { return nullptr; }

EnvPtr env_bind(const EnvPtr& env, VarId x, Closure c) {
    auto m = env ? std::make_shared<std::map<VarId, Closure>>(*env)
                 : std::make_shared<std::map<VarId, Closure>>();
    (*m)[x] = std::move(c);
    return m;
}

const Closure* env_lookup(const EnvPtr& env, VarId x) {
    if (!env) return nullptr;
    auto it = env->find(x);
    return it == env->end() ? nullptr : &it->second;
}

static bool env_submap(const EnvPtr& inner, const EnvPtr& outer) {
    if (!inner) return true;
    for (const auto& [x, c] : *inner) {
        const Closure* oc = env_lookup(outer, x);
        if (!oc) return false;
        if (oc->term != c.term) return false;  // same shared node
        if (!env_submap(c.env, outer) || !env_submap(oc->env, outer)) return false;
    }
    return true;
}

bool is_flat(const EnvPtr& env) {
    if (!env) return true;
    for (const auto& [x, c] : *env) {
        (void)x;
        if (!env_submap(c.env, env)) return false;
        if (!is_flat(c.env)) return false;
    }
    return true;
}

namespace {

// One ->_sigma step: descend the spine extending the environment at each
// prime-redex binder; at a variable head substitute a renamed copy of
// sigma_1(x). Returns nullopt on halt.
std::optional<TermPtr> machine_step(const TermPtr& term, const EnvPtr& env) {
    OccPath hp = head_occurrence_path(term);
    TermPtr head = resolve(term, hp);
    if (head->kind == TermKind::Const) return std::nullopt;

    EnvPtr sigma = env;
    SpinePaths sp = spine_paths(term, {});
    while (true) {
        if (sp.head->kind == TermKind::Abs && !sp.args.empty()) {
            // (\y.M') M_1...M_n: bind y -> (M_1, sigma), continue on M' M_2...M_n.
            sigma = env_bind(sigma, sp.head->var, Closure{sp.args.front().first, sigma});
            OccPath body_path = sp.head_path;
            body_path.push_back(Step::Body);
            SpinePaths inner = spine_paths(sp.head->body, body_path);
            std::vector<std::pair<TermPtr, OccPath>> rest = inner.args;
            rest.insert(rest.end(), sp.args.begin() + 1, sp.args.end());
            sp.head = inner.head;
            sp.head_path = inner.head_path;
            sp.args = std::move(rest);
            continue;
        }
        if (sp.head->kind == TermKind::Abs) {
            SpinePaths inner = spine_paths(sp.head->body, [&] {
                OccPath p = sp.head_path;
                p.push_back(Step::Body);
                return p;
            }());
            sp = std::move(inner);
            continue;
        }
        break;
    }
    // sp.head is now the head occurrence.
    if (sp.head->kind == TermKind::Const) return std::nullopt;
    const Closure* c = env_lookup(sigma, sp.head->var);
    if (!c) return std::nullopt;
    return substitute_occurrence(term, sp.head_path, c->term);
}

} // namespace

LhrTrace machine_run(const Closure& closure, uint64_t budget) {
    LhrTrace tr;
    TermPtr cur = closure.term;
    for (uint64_t i = 0; i < budget; i++) {
        std::optional<TermPtr> next = machine_step(cur, closure.env);
        if (!next) {
            tr.terminal = cur;
            tr.haltReason = head_is_constant(cur) ? HaltReason::HeadConstant
                                                  : HaltReason::HeadFreeOrUnmatched;
            return tr;
        }
        tr.steps.push_back({cur, PrimeRedex{}, head_occurrence_path(cur)});
        cur = *next;
    }
    tr.terminal = cur;
    tr.haltReason = HaltReason::BudgetExceeded;
    return tr;
}

// ---- beta ------------------------------------------------------------------

namespace {

std::optional<OccPath> find_beta_redex(const TermPtr& term) {
    std::optional<OccPath> found;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath& p) {
        if (found) return;
        if (t->kind == TermKind::App && t->fn->kind == TermKind::Abs) found = p;
    });
    return found;
}

} // namespace

TermPtr beta_normalize(const TermPtr& term, uint64_t budget) {
    TermPtr cur = term;
    for (uint64_t i = 0; i < budget; i++) {
        std::optional<OccPath> p = find_beta_redex(cur);
        if (!p) return cur;
        TermPtr redex = resolve(cur, *p);
        TermPtr contracted = substitute_all(redex->fn->body, redex->fn->var, redex->arg);
        cur = replace_at(cur, *p, contracted);
    }
    fail(Err::BudgetExceeded, "beta_normalize budget exhausted");
}

std::optional<uint64_t> numeral_value(const TermPtr& term) {
    // \f:o->o. \x:o. f (f (... x))
    const TypePtr oo = Type::arrow(Type::ground(), Type::ground());
    if (term->kind != TermKind::Abs || !type_eq(term->binder_type(), oo)) return std::nullopt;
    VarId f = term->var;
    TermPtr b = term->body;
    if (b->kind != TermKind::Abs || !b->binder_type()->is_ground()) return std::nullopt;
    VarId x = b->var;
    TermPtr cur = b->body;
    uint64_t n = 0;
    while (cur->kind == TermKind::App) {
        if (cur->fn->kind != TermKind::Var || cur->fn->var != f) return std::nullopt;
        n++;
        cur = cur->arg;
    }
    if (cur->kind != TermKind::Var || cur->var != x) return std::nullopt;
    return n;
}

} // namespace skellab
