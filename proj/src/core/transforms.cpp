#include "transforms.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "error.hpp"

namespace skellab {

namespace {

TermPtr contract_spine(const TermPtr& body, const std::vector<TermPtr>& args, size_t from) {
    TermPtr t = body;
    for (size_t i = from; i < args.size(); i++) t = Term::mk_app(t, args[i]);
    return t;
}

} // namespace

// ---- deficiency ---------------------------------------------------------------

uint64_t deficiency(const TermPtr& term) {
    Spine s = spine_of(term);
    switch (s.head->kind) {
        case TermKind::Var:
        case TermKind::Const: {
            // sum of argument deficiencies plus the sizes of the missing
            // argument types, i.e. size of the spine's own type minus one
            uint64_t d = term->type->size() - 1;
            for (const auto& a : s.args) d += deficiency(a);
            return d;
        }
        case TermKind::Abs: {
            if (s.args.empty()) return deficiency(s.head->body);
            return deficiency(contract_spine(s.head->body, s.args, 1)) + deficiency(s.args[0]);
        }
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

bool is_eta_long(const TermPtr& term) { return deficiency(term) == 0; }

// ---- eta expansion ------------------------------------------------------------

TermPtr eta_expand_at(const TermPtr& term, const OccPath& path) {
    TermPtr sub = resolve(term, path);
    if (sub->type->is_ground()) fail(Err::DomainError, "eta expansion needs an arrow type");
    VarId fresh = max_var_id(term) + 1;
    TermPtr y = Term::mk_var(fresh, "y", sub->type->dom());
    TermPtr expanded = Term::mk_abs(fresh, "y", sub->type->dom(), Term::mk_app(sub, y));
    return replace_at(term, path, expanded);
}

std::vector<TermPtr> all_eta_expansions(const TermPtr& term) {
    std::vector<TermPtr> out;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath& p) {
        if (!t->type->is_ground()) out.push_back(eta_expand_at(term, p));
    });
    return out;
}

namespace {

// Would one extra trailing argument on this spine pair a previously unpaired
// binder? Walks the contraction chain: an Abs head with an exhausted argument
// queue is exactly the binder the new argument would pair with.
bool extra_arg_pairs_binder(const TermPtr& head0, const std::vector<TermPtr>& args0) {
    TermPtr head = head0;
    std::deque<TermPtr> queue(args0.begin(), args0.end());
    while (head->kind == TermKind::Abs) {
        if (queue.empty()) return true;
        queue.pop_front();
        Spine inner = spine_of(head->body);
        for (auto it = inner.args.rbegin(); it != inner.args.rend(); ++it) queue.push_front(*it);
        head = inner.head;
    }
    return false;
}

// Leftmost-outermost search for a restricted expansion position. `pending` is
// the number of arguments the enclosing contraction chains will apply to the
// value of the current subterm: the expansion \y. S y_0 of a subterm with a
// pending argument always pairs the new binder with it.
struct RestrictedScan {
    const TermPtr& root;
    std::optional<OccPath> found;

    void visit(const TermPtr& t, const OccPath& p, size_t pending) {
        if (found) return;
        if (!t->type->is_ground() && pending == 0) {
            Spine s = spine_of(t);
            if (!extra_arg_pairs_binder(s.head, s.args)) {
                found = p;
                return;
            }
        }
        SpinePaths sp = spine_paths(t, p);
        size_t total = sp.args.size() + pending;
        if (sp.head->kind == TermKind::Abs) {
            OccPath bp = sp.head_path;
            bp.push_back(Step::Body);
            visit(sp.head->body, bp, total == 0 ? 0 : total - 1);
        }
        for (const auto& [a, ap] : sp.args) visit(a, ap, 0);
    }
};

} // namespace

std::optional<TermPtr> eta_restricted_step(const TermPtr& term) {
    RestrictedScan scan{term, std::nullopt};
    scan.visit(term, {}, 0);
    if (!scan.found) return std::nullopt;
    return eta_expand_at(term, *scan.found);
}

TermPtr eta_long_normalize(const TermPtr& term) {
    TermPtr cur = term;
    uint64_t guard = deficiency(cur);
    while (true) {
        std::optional<TermPtr> next = eta_restricted_step(cur);
        if (!next) return cur;
        cur = *next;
        uint64_t d = deficiency(cur);
        if (d >= guard)
            fail(Err::DomainError, "restricted eta-expansion did not decrease deficiency");
        guard = d;
    }
}

// ---- local scope ---------------------------------------------------------------

ScopeReport scope_report(const TermPtr& term) {
    ScopeReport r;
    std::set<VarId> fv = free_vars(term);
    std::vector<PrimeRedex> gens = generalized_redexes(term);

    std::set<VarId> all_vars = fv;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Var || t->kind == TermKind::Abs) all_vars.insert(t->var);
    });

    r.activeVars = fv;
    for (const auto& g : gens) r.activeVars.insert(g.binder);
    for (VarId v : all_vars)
        if (!r.activeVars.count(v)) r.passiveVars.insert(v);

    for (const auto& g : gens) {
        std::set<VarId> afv = free_vars(resolve(term, g.argumentPath));
        if (!afv.empty()) r.stronglyLocallyScoped = false;
        for (VarId v : afv)
            if (!r.activeVars.count(v)) r.violations.push_back({g, v});
    }
    r.locallyScoped = r.violations.empty();
    return r;
}

// ---- lambda lifting -------------------------------------------------------------

namespace {

struct LiftSite {
    OccPath absPath;  // the \x node
    OccPath argPath;  // M_1
};

std::optional<LiftSite> find_lift_spine(const TermPtr& head, const OccPath& head_path,
                                        const std::vector<std::pair<TermPtr, OccPath>>& args);

std::optional<LiftSite> find_lift_term(const TermPtr& t, const OccPath& base) {
    SpinePaths sp = spine_paths(t, base);
    return find_lift_spine(sp.head, sp.head_path, sp.args);
}

std::optional<LiftSite> find_lift_spine(const TermPtr& head, const OccPath& head_path,
                                        const std::vector<std::pair<TermPtr, OccPath>>& args) {
    switch (head->kind) {
        case TermKind::Var:
        case TermKind::Const:
            for (const auto& [a, p] : args)
                if (auto r = find_lift_term(a, p)) return r;
            return std::nullopt;
        case TermKind::Abs: {
            OccPath body_path = head_path;
            body_path.push_back(Step::Body);
            if (args.empty()) return find_lift_term(head->body, body_path);
            if (!free_vars(args[0].first).empty()) return LiftSite{head_path, args[0].second};
            // M_1 closed: the contracted spine M M_2...M_n may reduce
            SpinePaths inner = spine_paths(head->body, body_path);
            std::vector<std::pair<TermPtr, OccPath>> rest = inner.args;
            rest.insert(rest.end(), args.begin() + 1, args.end());
            if (auto r = find_lift_spine(inner.head, inner.head_path, rest)) return r;
            return find_lift_term(args[0].first, args[0].second);
        }
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

} // namespace

std::optional<TermPtr> lambda_lift_step(const TermPtr& term) {
    std::optional<LiftSite> site = find_lift_term(term, {});
    if (!site) return std::nullopt;

    TermPtr abs = resolve(term, site->absPath);
    TermPtr m1 = resolve(term, site->argPath);
    std::set<VarId> m1fv = free_vars(m1);
    VarId y = *m1fv.begin();  // smallest id

    TypePtr ytype;
    std::string yname;
    for_each_subterm(m1, [&](const TermPtr& t, const OccPath&) {
        if (!ytype && t->kind == TermKind::Var && t->var == y) {
            ytype = t->type;
            yname = t->name;
        }
    });

    VarId counter = max_var_id(term);
    VarId x = abs->var;
    TypePtr xtype_new = Type::arrow(ytype, abs->binder_type());

    // M[x y/x]: every occurrence of x becomes (x y) at the lifted type
    std::function<TermPtr(const TermPtr&)> relift = [&](const TermPtr& t) -> TermPtr {
        switch (t->kind) {
            case TermKind::Var:
                if (t->var == x)
                    return Term::mk_app(Term::mk_var(x, t->name, xtype_new),
                                        Term::mk_var(y, yname, ytype));
                return t;
            case TermKind::Const:
                return t;
            case TermKind::Abs:
                return Term::mk_abs(t->var, t->name, t->binder_type(), relift(t->body));
            case TermKind::App:
                return Term::mk_app(relift(t->fn), relift(t->arg));
        }
        fail(Err::DomainError, "unreachable");
    };
    TermPtr new_abs = Term::mk_abs(x, abs->name, xtype_new, relift(abs->body));

    // \y'. M_1[y'/y]
    VarId yprime = ++counter;
    std::function<TermPtr(const TermPtr&)> rename = [&](const TermPtr& t) -> TermPtr {
        switch (t->kind) {
            case TermKind::Var:
                if (t->var == y) return Term::mk_var(yprime, t->name, t->type);
                return t;
            case TermKind::Const:
                return t;
            case TermKind::Abs:
                return Term::mk_abs(t->var, t->name, t->binder_type(), rename(t->body));
            case TermKind::App:
                return Term::mk_app(rename(t->fn), rename(t->arg));
        }
        fail(Err::DomainError, "unreachable");
    };
    TermPtr new_arg = Term::mk_abs(yprime, yname, ytype, rename(m1));

    TermPtr out = replace_at(term, site->absPath, new_abs);
    out = replace_at(out, site->argPath, new_arg);

    // rebuilt annotations must typecheck, with free variables as context
    TypeContext ctx;
    {
        std::set<VarId> fv = free_vars(term);
        for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
            if (t->kind == TermKind::Var && fv.count(t->var)) ctx.emplace(t->var, t->type);
        });
    }
    typecheck(out, ctx);
    return out;
}

TermPtr lambda_lift_normalize(const TermPtr& term, uint64_t budget) {
    TermPtr cur = term;
    for (uint64_t i = 0; i < budget; i++) {
        std::optional<TermPtr> next = lambda_lift_step(cur);
        if (!next) return cur;
        cur = *next;
    }
    fail(Err::BudgetExceeded, "lambda_lift_normalize budget exhausted");
}

// ---- binding distances -----------------------------------------------------------

namespace {

// Per-occurrence binding distances (Lemma 5.53), keyed by root-relative path.
using BdMap = std::map<OccPath, uint64_t>;

void bd_spine(const TermPtr& head, const OccPath& head_path,
              const std::vector<std::pair<TermPtr, OccPath>>& args, BdMap& out);

BdMap bd_term(const TermPtr& t, const OccPath& base) {
    BdMap m;
    SpinePaths sp = spine_paths(t, base);
    bd_spine(sp.head, sp.head_path, sp.args, m);
    return m;
}

void bd_spine(const TermPtr& head, const OccPath& head_path,
              const std::vector<std::pair<TermPtr, OccPath>>& args, BdMap& out) {
    if (head->kind == TermKind::Var || head->kind == TermKind::Const) {
        if (head->kind == TermKind::Var) out[head_path] = 0;
        for (const auto& [a, p] : args) {
            BdMap m = bd_term(a, p);
            out.insert(m.begin(), m.end());
        }
        return;
    }
    // head is an abstraction
    OccPath body_path = head_path;
    body_path.push_back(Step::Body);
    if (args.empty()) {
        BdMap m = bd_term(head->body, body_path);
        out.insert(m.begin(), m.end());
        return;
    }
    // occurrences in the body: measured within the body alone
    BdMap mb = bd_term(head->body, body_path);
    out.insert(mb.begin(), mb.end());

    // D = max distance among the binder's occurrences in the body
    uint64_t D = 0;
    for_each_subterm(head->body, [&](const TermPtr& t, const OccPath& rel) {
        if (t->kind == TermKind::Var && t->var == head->var) {
            OccPath full = body_path;
            full.insert(full.end(), rel.begin(), rel.end());
            auto it = mb.find(full);
            if (it != mb.end()) D = std::max(D, it->second);
        }
    });

    // occurrences in M_1: candidates for lifting (free in M_1) get D + d + 1,
    // variables bound within M_1 keep their distance
    const TermPtr& m1 = args[0].first;
    const OccPath& m1path = args[0].second;
    std::set<VarId> m1fv = free_vars(m1);
    for (const auto& [p, d] : bd_term(m1, m1path)) {
        OccPath rel(p.begin() + static_cast<long>(m1path.size()), p.end());
        TermPtr occ = resolve(m1, rel);
        out[p] = m1fv.count(occ->var) ? D + d + 1 : d;
    }

    // occurrences in M_2...M_n: through the contracted spine M M_2...M_n
    if (args.size() > 1) {
        SpinePaths inner = spine_paths(head->body, body_path);
        std::vector<std::pair<TermPtr, OccPath>> rest = inner.args;
        rest.insert(rest.end(), args.begin() + 1, args.end());
        BdMap mc;
        bd_spine(inner.head, inner.head_path, rest, mc);
        for (size_t i = 1; i < args.size(); i++) {
            const OccPath& ap = args[i].second;
            for (const auto& [p, d] : mc)
                if (p.size() >= ap.size() && std::equal(ap.begin(), ap.end(), p.begin()))
                    out[p] = d;
        }
    }
}

} // namespace

std::multiset<uint64_t> binding_distances(const TermPtr& term) {
    std::multiset<uint64_t> out;
    for (const auto& [p, d] : bd_term(term, {})) {
        (void)p;
        out.insert(d);
    }
    return out;
}

// ---- variable expansion -----------------------------------------------------------

namespace {

TermPtr expand_rec(const TermPtr& t, VarId& counter) {
    switch (t->kind) {
        case TermKind::Const:
            return t;
        case TermKind::Var: {
            int n = t->type->arity();
            std::vector<std::pair<VarId, TypePtr>> ys;
            for (int i = 0; i < n; i++) ys.emplace_back(++counter, t->type->arg(i));
            TermPtr body = t;
            for (auto& [id, ty] : ys) body = Term::mk_app(body, Term::mk_var(id, "y", ty));
            for (auto it = ys.rbegin(); it != ys.rend(); ++it)
                body = Term::mk_abs(it->first, "y", it->second, body);
            return body;
        }
        case TermKind::Abs:
            return Term::mk_abs(t->var, t->name, t->binder_type(), expand_rec(t->body, counter));
        case TermKind::App:
            return Term::mk_app(expand_rec(t->fn, counter), expand_rec(t->arg, counter));
    }
    fail(Err::DomainError, "unreachable");
}

} // namespace

TermPtr expand_variables(const TermPtr& term) {
    VarId counter = max_var_id(term);
    return expand_rec(term, counter);
}

// ---- weighted measures -------------------------------------------------------------

namespace {

uint64_t lh_v(const TermPtr& t, const std::set<VarId>& V) {
    Spine s = spine_of(t);
    switch (s.head->kind) {
        case TermKind::Const:
            return 0;
        case TermKind::Var: {
            uint64_t m = 0;
            for (const auto& a : s.args) m = std::max(m, lh_v(a, V));
            if (V.count(s.head->var)) m = std::max<uint64_t>(m, 1);
            return 1 + m;
        }
        case TermKind::Abs:
            if (s.args.empty()) return lh_v(s.head->body, V);
            return std::max(lh_v(contract_spine(s.head->body, s.args, 1), V), lh_v(s.args[0], V));
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

} // namespace

WeightedMeasures weighted_measures(const TermPtr& term) {
    WeightedMeasures w;
    std::vector<PrimeRedex> gens = generalized_redexes(term);

    std::map<VarId, TypePtr> vars;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Var) vars.emplace(t->var, t->type);
        if (t->kind == TermKind::Abs) vars.emplace(t->var, t->binder_type());
    });

    // non-local variables: free in some generalized-redex argument
    std::set<VarId> nonlocal;
    for (const auto& g : gens) {
        std::set<VarId> afv = free_vars(resolve(term, g.argumentPath));
        nonlocal.insert(afv.begin(), afv.end());
        if (!afv.empty()) w.carrierVars.insert(g.binder);
    }
    for (const auto& [v, ty] : vars) {
        (void)ty;
        if (!nonlocal.count(v)) w.localVars.insert(v);
    }

    uint64_t ord = 0;
    for (const auto& [v, ty] : vars)
        ord = std::max<uint64_t>(ord, ty->level() + (w.localVars.count(v) ? 1 : 2));
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Const) ord = std::max<uint64_t>(ord, t->type->level());
    });
    w.weightedOrder = ord;
    w.weightedLocalHeight = lh_v(term, w.carrierVars);
    w.deficiency = deficiency(term);
    w.bindingDistances = binding_distances(term);
    return w;
}

// ---- closing ------------------------------------------------------------------------

TermPtr ground_close(const TermPtr& term) {
    std::function<TermPtr(const TermPtr&, std::set<VarId>&)> close =
        [&](const TermPtr& t, std::set<VarId>& bound) -> TermPtr {
        switch (t->kind) {
            case TermKind::Var:
                return bound.count(t->var) ? t : Term::mk_const(t->type);
            case TermKind::Const:
                return t;
            case TermKind::Abs: {
                bool fresh = bound.insert(t->var).second;
                TermPtr b = close(t->body, bound);
                if (fresh) bound.erase(t->var);
                return Term::mk_abs(t->var, t->name, t->binder_type(), b);
            }
            case TermKind::App:
                return Term::mk_app(close(t->fn, bound), close(t->arg, bound));
        }
        fail(Err::DomainError, "unreachable");
    };
    std::set<VarId> bound;
    TermPtr closed = close(term, bound);
    while (!closed->type->is_ground())
        closed = Term::mk_app(closed, Term::mk_const(closed->type->dom()));
    return closed;
}

// ---- beta helpers --------------------------------------------------------------------

std::vector<TermPtr> all_beta_reducts(const TermPtr& term) {
    std::vector<TermPtr> out;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath& p) {
        if (t->kind == TermKind::App && t->fn->kind == TermKind::Abs) {
            TermPtr contracted = substitute_all(t->fn->body, t->fn->var, t->arg);
            out.push_back(replace_at(term, p, contracted));
        }
    });
    return out;
}

} // namespace skellab
