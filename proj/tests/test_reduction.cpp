#include <doctest.h>

#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/syntax.hpp"
#include "core/reduction.hpp"
#include "core/transforms.hpp"

using namespace skellab;

namespace {

const char* kM0 = "(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)";

TermPtr example54() {
    // (\x.x) ((\y.\z.u) v w) with u, v, w free
    TypePtr o = Type::ground();
    TermPtr u = Term::mk_var(101, "u", o);
    TermPtr v = Term::mk_var(102, "v", o);
    TermPtr w = Term::mk_var(103, "w", o);
    TermPtr inner = Term::mk_abs(1, "y", o, Term::mk_abs(2, "z", o, u));
    TermPtr applied = Term::mk_app(Term::mk_app(inner, v), w);
    return Term::mk_app(Term::mk_abs(3, "x", o, Term::mk_var(3, "x", o)), applied);
}

} // namespace

TEST_CASE("head occurrence") {
    TermPtr m0 = parse_term(kM0);
    OccPath hp = head_occurrence_path(m0);
    TermPtr head = resolve(m0, hp);
    CHECK(head->kind == TermKind::Var);
    CHECK(head->name == "f");
    CHECK(head_is_constant(Term::mk_const(Type::ground())));
    TermPtr xy = Term::mk_app(Term::mk_var(1, "x", Type::arrow(Type::ground(), Type::ground())),
                              Term::mk_var(2, "y", Type::ground()));
    CHECK(resolve(xy, head_occurrence_path(xy))->name == "x");
}

TEST_CASE("prime redexes") {
    TermPtr m0 = parse_term(kM0);
    std::vector<PrimeRedex> ps = prime_redexes(m0);
    REQUIRE(ps.size() == 2);  // (\f, \y.y) and (\x, *)
    CHECK(resolve(m0, ps[0].argumentPath)->kind == TermKind::Abs);
    CHECK(resolve(m0, ps[1].argumentPath)->kind == TermKind::Const);

    // variable-headed spines have none
    TermPtr xy = Term::mk_app(Term::mk_var(1, "x", Type::arrow(Type::ground(), Type::ground())),
                              Term::mk_var(2, "y", Type::ground()));
    CHECK(prime_redexes(xy).empty());

    // Example 5.4: one prime redex only
    TermPtr m = example54();
    std::vector<PrimeRedex> pm = prime_redexes(m);
    REQUIRE(pm.size() == 1);
    CHECK(resolve(m, pm[0].argumentPath)->kind == TermKind::App);
}

TEST_CASE("generalized redexes") {
    // Example 5.4: (\x, .), (\y, v), (\z, w)
    TermPtr m = example54();
    std::vector<PrimeRedex> gs = generalized_redexes(m);
    CHECK(gs.size() == 3);
    // every prime redex is generalized
    for (const TermPtr& t : corpus_closed(47, 30, 20)) {
        std::vector<PrimeRedex> ps = prime_redexes(t);
        std::vector<PrimeRedex> g = generalized_redexes(t);
        for (const PrimeRedex& p : ps) {
            bool found = false;
            for (const PrimeRedex& q : g)
                if (q.binder == p.binder && q.argumentPath == p.argumentPath) found = true;
            CHECK(found);
        }
    }
    // beta-normal terms have none
    CHECK(generalized_redexes(parse_term("\\x:o->o. \\y:o. x y")).empty());
}

TEST_CASE("lhr golden trace of Example 5.2") {
    TermPtr m0 = parse_term(kM0);
    LhrTrace tr = lhr_run(m0, 100);
    REQUIRE(tr.length() == 5);
    CHECK(tr.haltReason == HaltReason::HeadConstant);
    const char* expected[] = {
        "(\\f:o->o. \\x:o. (\\z:o. z) (f x)) (\\y:o. y) (*:o)",
        "(\\f:o->o. \\x:o. (\\z:o. f x) (f x)) (\\y:o. y) (*:o)",
        "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. u) x) (f x)) (\\y:o. y) (*:o)",
        "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. x) x) (f x)) (\\y:o. y) (*:o)",
        "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. *:o) x) (f x)) (\\y:o. y) (*:o)",
    };
    for (size_t i = 0; i < 5; i++) CHECK(alpha_eq(tr.term_at(i + 1), parse_term(expected[i])));
    // deterministic: replay gives the same trace
    LhrTrace tr2 = lhr_run(m0, 100);
    for (size_t i = 0; i <= 5; i++) CHECK(alpha_eq(tr.term_at(i), tr2.term_at(i)));
}

TEST_CASE("lhr halts") {
    CHECK(lhr_run(Term::mk_const(Type::ground()), 10).length() == 0);
    CHECK(!lhr_step(parse_term("\\x:o. x")).has_value());
    TermPtr constHead = Term::mk_app(Term::mk_const(Type::arrow(Type::ground(), Type::ground())),
                                     Term::mk_const(Type::ground()));
    CHECK(lhr_run(constHead, 10).haltReason == HaltReason::HeadConstant);
    LhrTrace budget = lhr_run(parse_term(kM0), 2);
    CHECK(budget.haltReason == HaltReason::BudgetExceeded);
    CHECK(budget.length() == 2);
}

TEST_CASE("lhr preserves typing and hygiene and beta class") {
    for (const TermPtr& t : corpus_closed(53, 25, 18)) {
        LhrTrace tr = lhr_run(t, 100000);
        REQUIRE(tr.haltReason != HaltReason::BudgetExceeded);  // Prop 5.9 at desk scale
        TermPtr nf = beta_normalize(t, 100000);
        for (size_t i = 0; i <= tr.length(); i++) {
            TermPtr step = tr.term_at(i);
            CHECK(type_eq(typecheck(step), t->type));
            std::set<VarId> seen;
            bool distinct = true;
            for_each_subterm(step, [&](const TermPtr& s, const OccPath&) {
                if (s->kind == TermKind::Abs && !seen.insert(s->var).second) distinct = false;
            });
            CHECK(distinct);
        }
        CHECK(alpha_eq(beta_normalize(tr.terminal, 100000), nf));
    }
}

TEST_CASE("machine on closures") {
    TypePtr o = Type::ground();
    // (x, {x -> (*, {})}) steps once to * then halts
    TermPtr x = Term::mk_var(1, "x", o);
    Closure c{x, env_bind(empty_env(), 1, {Term::mk_const(o), empty_env()})};
    LhrTrace tr = machine_run(c, 10);
    CHECK(tr.length() == 1);
    CHECK(tr.terminal->kind == TermKind::Const);
    CHECK(tr.haltReason == HaltReason::HeadConstant);
    // (x, {}) halts immediately
    LhrTrace halt = machine_run({x, empty_env()}, 10);
    CHECK(halt.length() == 0);
    CHECK(halt.haltReason == HaltReason::HeadFreeOrUnmatched);
}

TEST_CASE("machine coincides with lhr on the empty environment") {
    TermPtr m0 = parse_term(kM0);
    LhrTrace a = lhr_run(m0, 100);
    LhrTrace b = machine_run({m0, empty_env()}, 100);
    REQUIRE(a.length() == b.length());
    for (size_t i = 0; i <= a.length(); i++) CHECK(alpha_eq(a.term_at(i), b.term_at(i)));

    for (const TermPtr& t : corpus_closed(59, 30, 20)) {
        LhrTrace x = lhr_run(t, 100000);
        LhrTrace y = machine_run({t, empty_env()}, 100000);
        REQUIRE(x.length() == y.length());
        for (size_t i = 0; i <= x.length(); i++) CHECK(alpha_eq(x.term_at(i), y.term_at(i)));
    }
}

TEST_CASE("flat environments") {
    TypePtr o = Type::ground();
    CHECK(is_flat(empty_env()));
    EnvPtr one = env_bind(empty_env(), 1, {Term::mk_const(o), empty_env()});
    CHECK(is_flat(one));
    // inner environment mentions a variable missing outside
    EnvPtr inner = env_bind(empty_env(), 2, {Term::mk_const(o), empty_env()});
    EnvPtr bad = env_bind(empty_env(), 1, {Term::mk_var(2, "y", o), inner});
    CHECK(!is_flat(bad));
}

TEST_CASE("beta normalize") {
    CHECK(alpha_eq(beta_normalize(parse_term("(\\x:o. x) (*:o)"), 10), parse_term("*:o")));
    TermPtr nf = parse_term("\\x:o->o. \\y:o. x y");
    CHECK(beta_normalize(nf, 10) == nf);  // beta-normal input unchanged
    CHECK_THROWS_AS(beta_normalize(parse_term("(\\x:o. x) ((\\x:o. x) (*:o))"), 1), Error);
}

TEST_CASE("beta monotonicity (Prop 5.12)") {
    for (const TermPtr& t : corpus_closed(61, 30, 20)) {
        uint64_t steps = lhr_run(t, 100000).length();
        for (const TermPtr& r : all_beta_reducts(t))
            CHECK(lhr_run(r, 100000).length() <= steps);
    }
}

TEST_CASE("numeral recognition") {
    TypePtr o = Type::ground();
    CHECK(numeral_value(parse_term("\\f:o->o. \\x:o. x")) == 0);
    CHECK(numeral_value(parse_term("\\f:o->o. \\x:o. f (f x)")) == 2);
    CHECK(!numeral_value(parse_term("\\x:o. x")).has_value());
    CHECK(!numeral_value(parse_term("\\f:o->o. \\x:o. f (*:o)")).has_value());
    (void)o;
}

TEST_CASE("lemma 5.51 at small n") {
    for (const TermPtr& t : corpus_numeral_terms(67, 15, 16)) {
        TermPtr nf = beta_normalize(t, 100000);
        std::optional<uint64_t> n = numeral_value(nf);
        REQUIRE(n.has_value());
        TermPtr id = Term::mk_abs(900001, "x", Type::ground(), Term::mk_var(900001, "x", Type::ground()));
        LhrTrace tr = lhr_run(Term::mk_app(t, id), 200000);
        REQUIRE(tr.haltReason != HaltReason::BudgetExceeded);
        CHECK(tr.length() >= *n);
    }
}
