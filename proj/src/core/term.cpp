#include "term.hpp"

#include <algorithm>
#include <optional>

#include "error.hpp"

namespace skellab {

TermPtr Term::mk_var(VarId id, std::string name, TypePtr type) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->var = id;
    t->name = std::move(name);
    t->type = std::move(type);
    return t;
}

TermPtr Term::mk_const(TypePtr type) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Const;
    t->type = std::move(type);
    return t;
}

TermPtr Term::mk_abs(VarId binder, std::string name, TypePtr binder_type, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Abs;
    t->var = binder;
    t->name = std::move(name);
    t->type = Type::arrow(std::move(binder_type), body->type);
    t->body = std::move(body);
    return t;
}

TermPtr Term::mk_app(TermPtr fn, TermPtr arg) {
    if (fn->type->is_ground())
        fail(Err::IllTyped, "application of a ground-typed term");
    if (!type_eq(fn->type->dom(), arg->type))
        fail(Err::IllTyped, "argument type " + arg->type->to_string() +
                                " does not match domain " + fn->type->dom()->to_string());
    auto t = std::make_shared<Term>();
    t->kind = TermKind::App;
    t->type = fn->type->cod();
    t->fn = std::move(fn);
    t->arg = std::move(arg);
    return t;
}

std::string path_to_string(const OccPath& p) {
    std::string s;
    for (Step st : p) {
        switch (st) {
            case Step::Fn: s += 'f'; break;
            case Step::Arg: s += 'a'; break;
            case Step::Body: s += 'b'; break;
        }
    }
    return s.empty() ? "." : s;
}

TermPtr resolve(const TermPtr& term, const OccPath& path) {
    TermPtr cur = term;
    for (Step st : path) {
        switch (st) {
            case Step::Fn:
                if (cur->kind != TermKind::App) fail(Err::DomainError, "path does not resolve");
                cur = cur->fn;
                break;
            case Step::Arg:
                if (cur->kind != TermKind::App) fail(Err::DomainError, "path does not resolve");
                cur = cur->arg;
                break;
            case Step::Body:
                if (cur->kind != TermKind::Abs) fail(Err::DomainError, "path does not resolve");
                cur = cur->body;
                break;
        }
    }
    return cur;
}

static TermPtr replace_rec(const TermPtr& term, const OccPath& path, size_t i, const TermPtr& repl) {
    if (i == path.size()) return repl;
    switch (path[i]) {
        case Step::Fn:
            return Term::mk_app(replace_rec(term->fn, path, i + 1, repl), term->arg);
        case Step::Arg:
            return Term::mk_app(term->fn, replace_rec(term->arg, path, i + 1, repl));
        case Step::Body:
            return Term::mk_abs(term->var, term->name, term->binder_type(),
                                replace_rec(term->body, path, i + 1, repl));
    }
    fail(Err::DomainError, "unreachable");
}

TermPtr replace_at(const TermPtr& term, const OccPath& path, const TermPtr& replacement) {
    resolve(term, path);  // validate
    return replace_rec(term, path, 0, replacement);
}

// ---- static queries -------------------------------------------------------

static TypePtr typecheck_rec(const TermPtr& t, TypeContext& ctx, const OccPath& path,
                             std::set<VarId>& binders_seen) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = ctx.find(t->var);
            if (it == ctx.end())
                fail(Err::IllTyped, "unbound variable " + t->name + " at " + path_to_string(path));
            if (!type_eq(it->second, t->type))
                fail(Err::IllTyped, "occurrence of " + t->name + " annotated " +
                                        t->type->to_string() + ", bound at " +
                                        it->second->to_string());
            return t->type;
        }
        case TermKind::Const:
            return t->type;
        case TermKind::Abs: {
            if (!binders_seen.insert(t->var).second)
                fail(Err::IllTyped, "duplicate binder id (Barendregt violation) for " + t->name);
            auto saved = ctx.find(t->var) != ctx.end() ? std::optional(ctx[t->var]) : std::nullopt;
            ctx[t->var] = t->binder_type();
            OccPath p = path;
            p.push_back(Step::Body);
            TypePtr bt = typecheck_rec(t->body, ctx, p, binders_seen);
            if (saved)
                ctx[t->var] = *saved;
            else
                ctx.erase(t->var);
            TypePtr full = Type::arrow(t->binder_type(), bt);
            if (!type_eq(full, t->type)) fail(Err::IllTyped, "abstraction annotation mismatch");
            return full;
        }
        case TermKind::App: {
            OccPath pf = path, pa = path;
            pf.push_back(Step::Fn);
            pa.push_back(Step::Arg);
            TypePtr ft = typecheck_rec(t->fn, ctx, pf, binders_seen);
            TypePtr at = typecheck_rec(t->arg, ctx, pa, binders_seen);
            if (ft->is_ground())
                fail(Err::IllTyped, "application of ground-typed term at " + path_to_string(path));
            if (!type_eq(ft->dom(), at))
                fail(Err::IllTyped, "domain mismatch at " + path_to_string(path) + ": expected " +
                                        ft->dom()->to_string() + ", found " + at->to_string());
            if (!type_eq(ft->cod(), t->type)) fail(Err::IllTyped, "application annotation mismatch");
            return t->type;
        }
    }
    fail(Err::IllTyped, "unreachable");
}

TypePtr typecheck(const TermPtr& term, const TypeContext& ctx) {
    TypeContext mut = ctx;
    std::set<VarId> binders;
    return typecheck_rec(term, mut, {}, binders);
}

static void free_vars_rec(const TermPtr& t, std::set<VarId>& bound, std::set<VarId>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->var)) out.insert(t->var);
            break;
        case TermKind::Const:
            break;
        case TermKind::Abs: {
            bool fresh = bound.insert(t->var).second;
            free_vars_rec(t->body, bound, out);
            if (fresh) bound.erase(t->var);
            break;
        }
        case TermKind::App:
            free_vars_rec(t->fn, bound, out);
            free_vars_rec(t->arg, bound, out);
            break;
    }
}

std::set<VarId> free_vars(const TermPtr& term) {
    std::set<VarId> bound, out;
    free_vars_rec(term, bound, out);
    return out;
}

bool is_closed(const TermPtr& term) { return free_vars(term).empty(); }

VarId max_var_id(const TermPtr& term) {
    VarId m = 0;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Var || t->kind == TermKind::Abs) m = std::max(m, t->var);
    });
    return m;
}

static bool alpha_rec(const TermPtr& a, const TermPtr& b, std::map<VarId, int>& da,
                      std::map<VarId, int>& db, int depth) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: {
            auto ia = da.find(a->var);
            auto ib = db.find(b->var);
            if ((ia == da.end()) != (ib == db.end())) return false;
            if (ia != da.end()) return ia->second == ib->second;
            return a->var == b->var;  // both free: same ambient variable
        }
        case TermKind::Const:
            return type_eq(a->type, b->type);
        case TermKind::Abs: {
            if (!type_eq(a->binder_type(), b->binder_type())) return false;
            auto sa = da.find(a->var) != da.end() ? std::optional(da[a->var]) : std::nullopt;
            auto sb = db.find(b->var) != db.end() ? std::optional(db[b->var]) : std::nullopt;
            da[a->var] = depth;
            db[b->var] = depth;
            bool r = alpha_rec(a->body, b->body, da, db, depth + 1);
            if (sa) da[a->var] = *sa; else da.erase(a->var);
            if (sb) db[b->var] = *sb; else db.erase(b->var);
            return r;
        }
        case TermKind::App:
            return alpha_rec(a->fn, b->fn, da, db, depth) &&
                   alpha_rec(a->arg, b->arg, da, db, depth);
    }
    return false;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    std::map<VarId, int> da, db;
    return alpha_rec(a, b, da, db, 0);
}

// ---- hygiene --------------------------------------------------------------

static TermPtr rename_rec(const TermPtr& t, std::map<VarId, VarId>& sub, VarId& counter) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = sub.find(t->var);
            if (it == sub.end()) return t;
            return Term::mk_var(it->second, t->name, t->type);
        }
        case TermKind::Const:
            return t;
        case TermKind::Abs: {
            VarId fresh = ++counter;
            auto saved = sub.find(t->var) != sub.end() ? std::optional(sub[t->var]) : std::nullopt;
            sub[t->var] = fresh;
            TermPtr body = rename_rec(t->body, sub, counter);
            if (saved) sub[t->var] = *saved; else sub.erase(t->var);
            return Term::mk_abs(fresh, t->name, t->binder_type(), body);
        }
        case TermKind::App:
            return Term::mk_app(rename_rec(t->fn, sub, counter), rename_rec(t->arg, sub, counter));
    }
    fail(Err::DomainError, "unreachable");
}

TermPtr rename_binders(const TermPtr& term, VarId& counter) {
    std::map<VarId, VarId> sub;
    return rename_rec(term, sub, counter);
}

TermPtr barendregt(const TermPtr& term) {
    VarId counter = max_var_id(term);
    return rename_binders(term, counter);
}

TermPtr substitute_occurrence(const TermPtr& term, const OccPath& occ, const TermPtr& replacement) {
    TermPtr target = resolve(term, occ);
    if (target->kind != TermKind::Var) fail(Err::NotAVariable, "occurrence is not a variable");
    if (!type_eq(target->type, replacement->type))
        fail(Err::TypeMismatch, "replacement has type " + replacement->type->to_string() +
                                    ", variable has type " + target->type->to_string());

    // Under the hygiene invariant a free id of the replacement may only refer
    // to a binder that encloses the occurrence (or to the ambient context).
    std::set<VarId> enclosing;
    {
        TermPtr cur = term;
        for (Step st : occ) {
            if (cur->kind == TermKind::Abs) enclosing.insert(cur->var);
            cur = st == Step::Fn ? cur->fn : (st == Step::Arg ? cur->arg : cur->body);
        }
    }
    std::set<VarId> binders_in_term;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Abs) binders_in_term.insert(t->var);
    });
    for (VarId w : free_vars(replacement)) {
        if (binders_in_term.count(w) && !enclosing.count(w))
            fail(Err::Capture, "replacement refers to a binder that does not scope the occurrence");
    }

    VarId counter = std::max(max_var_id(term), max_var_id(replacement));
    TermPtr copy = rename_binders(replacement, counter);
    return replace_at(term, occ, copy);
}

static TermPtr subst_all_rec(const TermPtr& t, VarId x, const TermPtr& repl, VarId& counter) {
    switch (t->kind) {
        case TermKind::Var:
            if (t->var == x) return rename_binders(repl, counter);
            return t;
        case TermKind::Const:
            return t;
        case TermKind::Abs:
            return Term::mk_abs(t->var, t->name, t->binder_type(),
                                subst_all_rec(t->body, x, repl, counter));
        case TermKind::App:
            return Term::mk_app(subst_all_rec(t->fn, x, repl, counter),
                                subst_all_rec(t->arg, x, repl, counter));
    }
    fail(Err::DomainError, "unreachable");
}

TermPtr substitute_all(const TermPtr& term, VarId x, const TermPtr& replacement) {
    VarId counter = std::max(max_var_id(term), max_var_id(replacement));
    return subst_all_rec(term, x, replacement, counter);
}

// ---- measures -------------------------------------------------------------

uint64_t term_length(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
        case TermKind::Const: return 1;
        case TermKind::Abs: return term_length(t->body) + 1;
        case TermKind::App: return term_length(t->fn) + term_length(t->arg);
    }
    return 0;
}

uint64_t term_height(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Const: return 0;
        case TermKind::Var: return 1;
        case TermKind::Abs: return term_height(t->body);
        case TermKind::App:
            return std::max(term_height(t->fn), term_height(t->arg) + 1);
    }
    return 0;
}

uint64_t node_count(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
        case TermKind::Const: return 1;
        case TermKind::Abs: return node_count(t->body) + 1;
        case TermKind::App: return node_count(t->fn) + node_count(t->arg) + 1;
    }
    return 0;
}

// depth and lh follow the spine-directed clauses of Def 5.32.
uint64_t term_depth(const TermPtr& t) {
    Spine s = spine_of(t);
    switch (s.head->kind) {
        case TermKind::Const:
            return 1;
        case TermKind::Var: {
            uint64_t m = 1;  // empty max is 1: depth(x_0) = 1
            for (const auto& a : s.args) m = std::max(m, term_depth(a));
            return m;
        }
        case TermKind::Abs: {
            if (s.args.empty()) return term_depth(s.head->body);
            TermPtr contracted = s.head->body;
            for (size_t i = 1; i < s.args.size(); i++)
                contracted = Term::mk_app(contracted, s.args[i]);
            return std::max(term_depth(contracted), term_depth(s.args[0]) + 1);
        }
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

uint64_t term_local_height(const TermPtr& t) {
    Spine s = spine_of(t);
    switch (s.head->kind) {
        case TermKind::Const:
            return 0;
        case TermKind::Var: {
            uint64_t m = 0;  // empty max is 0: lh(x_0) = 1
            for (const auto& a : s.args) m = std::max(m, term_local_height(a));
            return 1 + m;
        }
        case TermKind::Abs: {
            if (s.args.empty()) return term_local_height(s.head->body);
            TermPtr contracted = s.head->body;
            for (size_t i = 1; i < s.args.size(); i++)
                contracted = Term::mk_app(contracted, s.args[i]);
            return std::max(term_local_height(contracted), term_local_height(s.args[0]));
        }
        default:
            break;
    }
    fail(Err::DomainError, "unreachable");
}

uint64_t term_order(const TermPtr& t) {
    uint64_t m = 0;
    for_each_subterm(t, [&](const TermPtr& s, const OccPath&) {
        m = std::max<uint64_t>(m, s->type->level());
    });
    return m;
}

TermMeasures measures(const TermPtr& term) {
    TermMeasures r;
    r.level = term->type->level();
    r.order = term_order(term);
    r.length = term_length(term);
    r.height = term_height(term);
    r.depth = term_depth(term);
    r.localHeight = term_local_height(term);
    return r;
}

// ---- spine view -----------------------------------------------------------

Spine spine_of(const TermPtr& term) {
    Spine s;
    TermPtr cur = term;
    while (cur->kind == TermKind::App) {
        s.args.push_back(cur->arg);
        cur = cur->fn;
    }
    std::reverse(s.args.begin(), s.args.end());
    s.head = cur;
    return s;
}

SpinePaths spine_paths(const TermPtr& term, const OccPath& base) {
    SpinePaths s;
    TermPtr cur = term;
    OccPath p = base;
    std::vector<std::pair<TermPtr, OccPath>> rev;
    while (cur->kind == TermKind::App) {
        OccPath ap = p;
        ap.push_back(Step::Arg);
        rev.emplace_back(cur->arg, std::move(ap));
        p.push_back(Step::Fn);
        cur = cur->fn;
    }
    std::reverse(rev.begin(), rev.end());
    s.args = std::move(rev);
    s.head = cur;
    s.head_path = std::move(p);
    return s;
}

void for_each_subterm(const TermPtr& term,
                      const std::function<void(const TermPtr&, const OccPath&)>& f) {
    struct Walker {
        const std::function<void(const TermPtr&, const OccPath&)>& f;
        OccPath path;
        void walk(const TermPtr& t) {
            f(t, path);
            switch (t->kind) {
                case TermKind::Var:
                case TermKind::Const:
                    break;
                case TermKind::Abs:
                    path.push_back(Step::Body);
                    walk(t->body);
                    path.pop_back();
                    break;
                case TermKind::App:
                    path.push_back(Step::Fn);
                    walk(t->fn);
                    path.pop_back();
                    path.push_back(Step::Arg);
                    walk(t->arg);
                    path.pop_back();
                    break;
            }
        }
    } w{f, {}};
    w.walk(term);
}

} // namespace skellab
