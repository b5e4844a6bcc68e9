#include "generator.hpp"

#include <algorithm>

#include "error.hpp"
#include "reduction.hpp"
#include "transforms.hpp"

namespace skellab {

namespace {

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

} // namespace

TypePtr TermGen::random_type(int max_level, int max_size) {
    if (max_level <= 0 || max_size <= 1 || chance(rng_, 0.45)) return Type::ground();
    TypePtr d = random_type(max_level - 1, max_size / 2);
    TypePtr c = random_type(max_level, max_size / 2);
    return Type::arrow(d, c);
}

TermPtr TermGen::gen(std::vector<Binding>& ctx, const TypePtr& goal, int fuel) {
    // abstraction on arrow goals
    if (!goal->is_ground() && (fuel <= 1 || chance(rng_, 0.6))) {
        VarId x = ++counter_;
        ctx.push_back({x, goal->dom()});
        TermPtr body = gen(ctx, goal->cod(), fuel - 1);
        ctx.pop_back();
        return Term::mk_abs(x, "v" + std::to_string(x % 23), goal->dom(), body);
    }
    // a redex around the goal
    if (fuel >= 5 && chance(rng_, 0.35)) {
        TypePtr a = random_type(2, 4);
        VarId x = ++counter_;
        ctx.push_back({x, a});
        TermPtr body = gen(ctx, goal, fuel / 2);
        ctx.pop_back();
        TermPtr arg = gen(ctx, a, fuel / 2);
        return Term::mk_app(Term::mk_abs(x, "v" + std::to_string(x % 23), a, body), arg);
    }
    // variable- or constant-headed spine ending at the goal
    std::vector<std::pair<TypePtr, std::optional<Binding>>> heads;
    for (const Binding& b : ctx) {
        TypePtr t = b.type;
        for (int k = 0; k <= 3; k++) {
            if (type_eq(t, goal)) {
                heads.push_back({b.type, b});
                break;
            }
            if (t->is_ground()) break;
            t = t->cod();
        }
    }
    if (!heads.empty() && fuel >= 1 && chance(rng_, 0.75)) {
        auto& [ht, binding] = heads[static_cast<size_t>(rand_int(rng_, 0, static_cast<int>(heads.size()) - 1))];
        TermPtr head = Term::mk_var(binding->id, "v" + std::to_string(binding->id % 23), ht);
        TypePtr t = ht;
        while (!type_eq(t, goal)) {
            TermPtr arg = gen(ctx, t->dom(), std::max(1, fuel / 2));
            head = Term::mk_app(head, arg);
            t = t->cod();
        }
        return head;
    }
    if (fuel >= 3 && chance(rng_, 0.3)) {
        // constant head with one argument
        TypePtr a = random_type(1, 3);
        TermPtr head = Term::mk_const(Type::arrow(a, goal));
        return Term::mk_app(head, gen(ctx, a, fuel - 2));
    }
    return Term::mk_const(goal);
}

TermPtr TermGen::closed(const TypePtr& goal, int fuel) {
    std::vector<Binding> ctx;
    return barendregt(gen(ctx, goal, fuel));
}

std::vector<TermPtr> corpus_closed(uint64_t seed, size_t count, int max_nodes) {
    TermGen g(seed);
    std::vector<TermPtr> out;
    while (out.size() < count) {
        TermPtr t = g.closed_ground(rand_int(g.rng(), 4, 14));
        if (node_count(t) <= static_cast<uint64_t>(max_nodes)) {
            typecheck(t);
            out.push_back(t);
        }
    }
    return out;
}

std::vector<TermPtr> corpus_game_situations(uint64_t seed, size_t count) {
    TermGen g(seed);
    std::vector<TermPtr> out;
    while (out.size() < count) {
        TermPtr t = g.closed_ground(rand_int(g.rng(), 4, 12));
        if (node_count(t) > 24) continue;
        TermPtr closed = ground_close(t);
        if (!is_closed(closed) || !closed->type->is_ground())
            fail(Err::DomainError, "ground_close postcondition failed");
        TermPtr expanded = expand_variables(closed);
        if (term_local_height(expanded) > 2)
            fail(Err::DomainError, "expand_variables postcondition failed");
        TermPtr lifted = lambda_lift_normalize(expanded);
        if (!scope_report(lifted).stronglyLocallyScoped)
            fail(Err::DomainError, "lambda_lift_normalize postcondition failed");
        TermPtr elong = eta_long_normalize(lifted);
        if (deficiency(elong) != 0)
            fail(Err::DomainError, "eta_long_normalize postcondition failed");
        typecheck(elong);
        out.push_back(elong);
    }
    return out;
}

std::vector<TermPtr> corpus_numeral_terms(uint64_t seed, size_t count, uint64_t max_value) {
    std::mt19937_64 rng(seed);
    std::vector<TermPtr> out;
    TypePtr o = Type::ground();
    TypePtr oo = Type::arrow(o, o);

    auto numeral = [&](uint64_t n, int p) {
        TypePtr fa = church_type(p - 1), xa = church_type(p - 2);
        VarId f = 1, x = 2;
        TermPtr body = Term::mk_var(x, "x", xa);
        for (uint64_t i = 0; i < n; i++) body = Term::mk_app(Term::mk_var(f, "f", fa), body);
        return barendregt(Term::mk_abs(f, "f", fa, Term::mk_abs(x, "x", xa, body)));
    };

    std::function<TermPtr(int)> build = [&](int depth) -> TermPtr {
        int pick = rand_int(rng, 0, depth <= 0 ? 0 : 3);
        if (pick == 0) return numeral(static_cast<uint64_t>(rand_int(rng, 0, 3)), 0);
        if (pick == 1)  // iteration: m_1 e
            return barendregt(Term::mk_app(numeral(static_cast<uint64_t>(rand_int(rng, 2, 3)), 1),
                                           build(depth - 1)));
        if (pick == 2) {  // addition: \f.\x. a f (b f x)
            TermPtr a = build(depth - 1), b = build(depth - 1);
            VarId f = 1000001, x = 1000002;
            TermPtr fa = Term::mk_var(f, "f", oo);
            TermPtr body = Term::mk_app(Term::mk_app(a, fa),
                                        Term::mk_app(Term::mk_app(b, Term::mk_var(f, "f", oo)),
                                                     Term::mk_var(x, "x", o)));
            return barendregt(Term::mk_abs(f, "f", oo, Term::mk_abs(x, "x", o, body)));
        }
        // multiplication: \f. a (b f)
        TermPtr a = build(depth - 1), b = build(depth - 1);
        VarId f = 1000001;
        TermPtr body = Term::mk_app(a, Term::mk_app(b, Term::mk_var(f, "f", oo)));
        return barendregt(Term::mk_abs(f, "f", oo, body));
    };

    while (out.size() < count) {
        TermPtr t = build(2);
        try {
            TermPtr nf = beta_normalize(t, 100000);
            std::optional<uint64_t> v = numeral_value(nf);
            if (v && *v <= max_value) out.push_back(t);
        } catch (const Error&) {
        }
    }
    return out;
}

namespace {

SkelPtr random_skel(std::mt19937_64& rng, uint64_t max_order, uint64_t depth_left,
                    uint64_t max_label) {
    uint64_t root = static_cast<uint64_t>(rand_int(rng, 0, static_cast<int>(max_label)));
    std::vector<Skeleton::Edge> cs;
    if (depth_left > 1) {
        int n = rand_int(rng, 0, 3);
        for (int i = 0; i < n; i++) {
            uint64_t e = static_cast<uint64_t>(rand_int(rng, 0, static_cast<int>(max_order)));
            cs.push_back({e, random_skel(rng, max_order, depth_left - 1, max_label)});
        }
    }
    return Skeleton::make(root, std::move(cs));
}

SkelPtr weaken(std::mt19937_64& rng, const SkelPtr& b) {
    uint64_t root = static_cast<uint64_t>(rand_int(rng, 0, static_cast<int>(b->root())));
    std::vector<Skeleton::Edge> cs;
    for (const auto& e : b->children()) {
        if (chance(rng, 0.7)) {
            uint64_t lab = static_cast<uint64_t>(rand_int(rng, 0, static_cast<int>(e.label)));
            cs.push_back({lab, weaken(rng, e.child)});
        }
    }
    return Skeleton::make(root, std::move(cs));
}

} // namespace

std::vector<SkelPtr> random_skeletons(uint64_t seed, size_t count, uint64_t max_order,
                                      uint64_t max_depth, uint64_t max_label) {
    std::mt19937_64 rng(seed);
    std::vector<SkelPtr> out;
    for (size_t i = 0; i < count; i++) {
        uint64_t d = static_cast<uint64_t>(rand_int(rng, 1, static_cast<int>(max_depth)));
        out.push_back(random_skel(rng, max_order, d, max_label));
    }
    return out;
}

std::vector<std::pair<SkelPtr, SkelPtr>> random_embedded_pairs(uint64_t seed, size_t count,
                                                               uint64_t max_order,
                                                               uint64_t max_depth,
                                                               uint64_t max_label) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<SkelPtr, SkelPtr>> out;
    for (size_t i = 0; i < count; i++) {
        uint64_t d = static_cast<uint64_t>(rand_int(rng, 1, static_cast<int>(max_depth)));
        SkelPtr b = random_skel(rng, max_order, d, max_label);
        out.emplace_back(weaken(rng, b), b);
    }
    return out;
}

} // namespace skellab
