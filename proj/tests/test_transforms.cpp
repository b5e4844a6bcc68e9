#include <doctest.h>

#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/reduction.hpp"
#include "core/syntax.hpp"
#include "core/transforms.hpp"

using namespace skellab;

namespace {

TypePtr o() { return Type::ground(); }
TypePtr oo() { return Type::arrow(o(), o()); }

// eta-long by exhaustive search: no single expansion anywhere preserves the
// generalized-redex count.
bool eta_long_brute(const TermPtr& m) {
    size_t base = generalized_redex_count(m);
    for (const TermPtr& e : all_eta_expansions(m)) {
        size_t c = generalized_redex_count(e);
        REQUIRE(c >= base);  // expansions never lose redexes
        if (c == base) return false;
    }
    return true;
}

bool multiset_lt(const std::multiset<uint64_t>& a, const std::multiset<uint64_t>& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib)
        if (*ia != *ib) return *ia < *ib;
    return ia == a.rend() && ib != b.rend();
}

} // namespace

TEST_CASE("deficiency and eta-long") {
    CHECK(is_eta_long(parse_term("\\x:o. x")));
    CHECK(!is_eta_long(Term::mk_var(1, "f", oo())));        // expands to \y. f y
    CHECK(is_eta_long(parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)")));
    CHECK(deficiency(Term::mk_var(1, "f", oo())) == 1);
    CHECK(deficiency(Term::mk_const(Type::arrow(oo(), o()))) == 3);
}

TEST_CASE("eta-long via deficiency matches brute force on small terms") {
    for (const TermPtr& t : corpus_closed(71, 60, 12)) {
        bool brute = eta_long_brute(t);
        CHECK(is_eta_long(t) == brute);
        CHECK(eta_restricted_step(t).has_value() == !brute);
    }
}

TEST_CASE("restricted eta expansion") {
    TermPtr f = Term::mk_var(1, "f", oo());
    std::optional<TermPtr> step = eta_restricted_step(f);
    REQUIRE(step.has_value());
    CHECK((*step)->kind == TermKind::Abs);
    CHECK(alpha_eq(*step, Term::mk_abs(9, "y", o(), Term::mk_app(f, Term::mk_var(9, "y", o())))));

    // ground-bodied abstraction of an eta-long body is a normal form
    CHECK(!eta_restricted_step(parse_term("\\x:o. x")).has_value());

    // expanding the whole spine of (\x.\z.z) M would create (\z, y_0): skipped
    TermPtr m = Term::mk_app(
        Term::mk_abs(1, "x", o(), Term::mk_abs(2, "z", o(), Term::mk_var(2, "z", o()))),
        Term::mk_const(o()));
    std::optional<TermPtr> s = eta_restricted_step(m);
    // the only restricted position is not the root spine
    if (s) CHECK(generalized_redex_count(*s) == generalized_redex_count(m));

    // deficiency strictly decreases along every restricted step
    for (const TermPtr& t : corpus_closed(73, 40, 16)) {
        uint64_t d = deficiency(t);
        if (std::optional<TermPtr> r = eta_restricted_step(t)) {
            CHECK(deficiency(*r) < d);
            CHECK(generalized_redex_count(*r) == generalized_redex_count(t));
        } else {
            CHECK(d == 0);
        }
    }
}

TEST_CASE("eta-long normalization") {
    TermPtr f = Term::mk_var(1, "f", oo());
    TermPtr fl = eta_long_normalize(f);
    CHECK(alpha_eq(fl, Term::mk_abs(9, "y", o(), Term::mk_app(f, Term::mk_var(9, "y", o())))));

    TermPtr already = parse_term("\\x:o. x");
    CHECK(eta_long_normalize(already) == already);

    // g:(o->o)->o becomes \h. g (\z. h z)
    TermPtr g = Term::mk_var(1, "g", Type::arrow(oo(), o()));
    TermPtr gl = eta_long_normalize(g);
    CHECK(deficiency(gl) == 0);
    TermPtr expect = Term::mk_abs(
        2, "h", oo(),
        Term::mk_app(g, Term::mk_abs(3, "z", o(),
                                     Term::mk_app(Term::mk_var(2, "h", oo()),
                                                  Term::mk_var(3, "z", o())))));
    CHECK(alpha_eq(gl, expect));

    // Prop 5.49 measure postconditions
    for (const TermPtr& t : corpus_closed(79, 40, 18)) {
        TermMeasures before = measures(t);
        TermPtr e = eta_long_normalize(t);
        TermMeasures after = measures(e);
        CHECK(deficiency(e) == 0);
        CHECK(after.depth == before.depth);
        CHECK(after.order == before.order);
        CHECK(after.localHeight <= before.localHeight + before.order);
        CHECK(lhr_run(e, 100000).length() >= lhr_run(t, 100000).length());
    }
}

TEST_CASE("scope report") {
    // (\y. (\x. x y) (\z. z)) * : locally scoped but not strongly
    TermPtr m = parse_term("(\\y:o. (\\x:o->o. x y) (\\z:o. z)) (*:o)");
    ScopeReport r = scope_report(m);
    CHECK(r.locallyScoped);
    CHECK(!r.stronglyLocallyScoped);

    // its lhr reduct is still locally scoped (Lemma 5.22)
    std::optional<TermPtr> next = lhr_step(m);
    REQUIRE(next.has_value());
    CHECK(scope_report(*next).locallyScoped);

    // closed beta-normal terms are vacuously sls
    ScopeReport v = scope_report(parse_term("\\x:o->o. \\y:o. x y"));
    CHECK(v.stronglyLocallyScoped);
    CHECK(v.locallyScoped);
}

TEST_CASE("eta-long and ls are preserved along lhr traces") {
    for (const TermPtr& t : corpus_game_situations(83, 12)) {
        LhrTrace tr = lhr_run(t, 100000);
        REQUIRE(tr.haltReason != HaltReason::BudgetExceeded);
        for (size_t i = 0; i <= tr.length(); i++) {
            CHECK(is_eta_long(tr.term_at(i)));
            CHECK(scope_report(tr.term_at(i)).locallyScoped);
        }
    }
}

TEST_CASE("lambda lift step") {
    // \x:A. (\y:A. y) x  lifts to  \x:A. (\y:A->A. y x) (\x':A. x')
    TermPtr m = parse_term("\\x:o. (\\y:o. y) x");
    std::optional<TermPtr> lifted = lambda_lift_step(m);
    REQUIRE(lifted.has_value());
    CHECK(alpha_eq(*lifted, parse_term("\\x:o. (\\y:o->o. y x) (\\x':o. x')")));
    CHECK(scope_report(*lifted).stronglyLocallyScoped);
    CHECK(!lambda_lift_step(*lifted).has_value());

    // sls terms are lambda-lift normal
    CHECK(!lambda_lift_step(parse_term("(\\x:o. x) (*:o)")).has_value());

    // binding distances strictly decrease across a step
    for (const TermPtr& t : corpus_closed(89, 40, 18)) {
        if (std::optional<TermPtr> r = lambda_lift_step(t))
            CHECK(multiset_lt(binding_distances(*r), binding_distances(t)));
    }
}

TEST_CASE("lambda lift normalization") {
    TermPtr m = parse_term("\\x:o. (\\y:o. y) x");
    CHECK(scope_report(lambda_lift_normalize(m)).stronglyLocallyScoped);

    TermPtr sls = parse_term("(\\x:o. x) (*:o)");
    CHECK(lambda_lift_normalize(sls) == sls);

    for (const TermPtr& t : corpus_closed(97, 30, 18)) {
        TermPtr n = lambda_lift_normalize(t);
        CHECK(scope_report(n).stronglyLocallyScoped);
        CHECK(term_depth(n) == term_depth(t));                       // Lemma 5.59
        CHECK(term_order(n) <= term_order(t) + 1);                   // Lemma 5.61
        CHECK(term_local_height(n) <= term_local_height(t) + 1);     // Lemma 5.63
        CHECK(lhr_run(n, 100000).length() >= lhr_run(t, 100000).length());  // Prop 5.58
    }
}

TEST_CASE("weighted measures") {
    for (const TermPtr& t : corpus_closed(101, 40, 18)) {
        TermMeasures m = measures(t);
        WeightedMeasures w = weighted_measures(t);
        CHECK(m.order <= w.weightedOrder);
        CHECK(w.weightedOrder <= m.order + 1);
        CHECK(m.localHeight <= w.weightedLocalHeight);
        CHECK(w.weightedLocalHeight <= m.localHeight + 1);
        if (std::optional<TermPtr> r = lambda_lift_step(t)) {
            WeightedMeasures wr = weighted_measures(*r);
            CHECK(wr.weightedOrder == w.weightedOrder);               // Lemma 5.61
            CHECK(wr.weightedLocalHeight == w.weightedLocalHeight);   // Lemma 5.63
        }
    }
    // eta-long terms have deficiency zero by definition of the normal form
    CHECK(weighted_measures(parse_term("\\x:o. x")).deficiency == 0);
}

TEST_CASE("expand variables") {
    TermPtr x = Term::mk_var(1, "x", oo());
    TermPtr e = expand_variables(x);
    CHECK(alpha_eq(e, Term::mk_abs(7, "y", o(), Term::mk_app(x, Term::mk_var(7, "y", o())))));
    TermPtr c = Term::mk_const(church_type(1));
    CHECK(expand_variables(c) == c);  // exp(*) = *
    TermPtr ground = parse_term("\\x:o. x");
    CHECK(alpha_eq(expand_variables(ground), ground));  // ground occurrences unchanged

    for (const TermPtr& t : corpus_closed(103, 40, 18)) {
        TermPtr ex = expand_variables(t);
        CHECK(term_local_height(ex) <= 2);
        CHECK(term_depth(ex) <= term_height(t));
        CHECK(term_order(ex) == term_order(t));
        CHECK(lhr_run(ex, 100000).length() >= lhr_run(t, 100000).length());
    }
}

TEST_CASE("eta monotonicity (Prop 5.42)") {
    for (const TermPtr& t : corpus_closed(107, 25, 16)) {
        uint64_t steps = lhr_run(t, 100000).length();
        for (const TermPtr& e : all_eta_expansions(t))
            CHECK(lhr_run(e, 100000).length() >= steps);
    }
}

TEST_CASE("ground close") {
    TermPtr fx = Term::mk_app(Term::mk_var(1, "f", oo()), Term::mk_var(2, "x", o()));
    TermPtr closed = ground_close(fx);
    CHECK(is_closed(closed));
    CHECK(closed->type->is_ground());
    CHECK(alpha_eq(closed, Term::mk_app(Term::mk_const(oo()), Term::mk_const(o()))));

    TermPtr already = parse_term("(\\x:o. x) (*:o)");
    CHECK(ground_close(already) == already);

    TermPtr id = parse_term("\\x:o. x");
    CHECK(alpha_eq(ground_close(id), parse_term("(\\x:o. x) (*:o)")));
}
