#include <doctest.h>

#include "core/compile.hpp"
#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/skeleton.hpp"
#include "core/syntax.hpp"
#include "core/transforms.hpp"

using namespace skellab;

namespace {

TypePtr o() { return Type::ground(); }
TypePtr oo() { return Type::arrow(o(), o()); }

} // namespace

TEST_CASE("interpretation clauses") {
    // constant-headed spines map to the atomic 0
    TermPtr c = Term::mk_app(Term::mk_const(oo()), Term::mk_const(o()));
    CHECK(skel_eq(interpret(c), Skeleton::atom(0)));
    CHECK(skel_eq(interpret(Term::mk_const(o())), Skeleton::atom(0)));

    // [[\y:o. y]] = 1
    CHECK(skel_eq(interpret(parse_term("\\y:o. y")), Skeleton::atom(1)));

    // golden value for Example 5.2, canonical form of 3[{1}0,{2}1,{2}1]
    TermPtr m0 = parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)");
    CHECK(skel_eq(interpret(m0), parse_skeleton("3[{1}0,{2}1,{2}1]")));

    // variable clause edge label is lv(x)+1
    BsEnv rho{{1, Skeleton::atom(4)}};
    SkelPtr v = interpret(Term::mk_var(1, "f", oo()), rho);
    CHECK(skel_eq(v, parse_skeleton("1[{2}4]")));
}

TEST_CASE("interpretation ignores junk bindings (Lemma 5.25)") {
    TermPtr m0 = parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)");
    BsEnv junk{{424242, parse_skeleton("9[{9}9]")}};
    CHECK(skel_eq(interpret(m0, junk), interpret(m0)));
    for (const TermPtr& t : corpus_closed(109, 20, 18))
        CHECK(skel_eq(interpret(t, junk), interpret(t)));
}

TEST_CASE("interpretation is invariant under barendregt") {
    for (const TermPtr& t : corpus_closed(113, 30, 18))
        CHECK(skel_eq(interpret(barendregt(t)), interpret(t)));
}

TEST_CASE("application embedding (Lemma 5.27)") {
    // [[M N_1...N_n]] embeds [[M]] . {lv(N_i)+1}[[N_i]] for ls eta-long M
    TermPtr id = parse_term("\\x:o. x");
    TermPtr c = Term::mk_const(o());
    SkelPtr lhs = interpret(Term::mk_app(id, c));
    SkelPtr rhs = graft(interpret(id), 1, interpret(c));
    CHECK(embeds(lhs, rhs));

    TermPtr two = parse_term("\\f:o->o. \\x:o. f (f x)");
    TermPtr idf = parse_term("\\y:o. y");
    SkelPtr lhs2 = interpret(Term::mk_app(two, idf));
    SkelPtr rhs2 = graft(interpret(two), 2, interpret(idf));
    CHECK(embeds(lhs2, rhs2));

    for (const TermPtr& gs : corpus_game_situations(127, 8)) {
        // strip the spine back to (head, last argument) when possible
        if (gs->kind != TermKind::App) continue;
        TermPtr m = gs->fn;
        TermPtr n = gs->arg;
        if (!is_eta_long(m) || !scope_report(m).locallyScoped) continue;
        SkelPtr l = interpret(gs);
        SkelPtr r = graft(interpret(m), static_cast<uint64_t>(n->type->level()) + 1, interpret(n));
        CHECK(embeds(l, r));
    }
}

TEST_CASE("environment interpretation (Def 5.30)") {
    CHECK(env_to_bsenv(empty_env()).empty());
    EnvPtr e1 = env_bind(empty_env(), 1, {Term::mk_const(o()), empty_env()});
    BsEnv b1 = env_to_bsenv(e1);
    REQUIRE(b1.count(1));
    CHECK(skel_eq(b1[1], Skeleton::atom(0)));

    // {x -> (y, {y -> (*, {})})} gives {x -> 1[{1}0]}
    EnvPtr inner = env_bind(empty_env(), 2, {Term::mk_const(o()), empty_env()});
    EnvPtr e2 = env_bind(empty_env(), 1, {Term::mk_var(2, "y", o()), inner});
    BsEnv b2 = env_to_bsenv(e2);
    REQUIRE(b2.count(1));
    CHECK(skel_eq(b2[1], parse_skeleton("1[{1}0]")));
}

TEST_CASE("check_simulation on Example 5.2") {
    TermPtr m0 = parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)");
    SimulationReport rep = check_simulation(m0, 1000);
    CHECK(rep.ok);
    CHECK(rep.steps == 5);
    CHECK(rep.witnesses.size() == 5);

    SimulationReport triv = check_simulation(Term::mk_const(o()), 10);
    CHECK(triv.ok);
    CHECK(triv.steps == 0);
}

TEST_CASE("check_simulation preconditions") {
    // open term
    CHECK_THROWS_AS(check_simulation(Term::mk_var(1, "x", o()), 10), Error);
    // non-ground
    CHECK_THROWS_AS(check_simulation(parse_term("\\x:o. x"), 10), Error);
    // not eta-long: a bare higher-order variable occurrence in argument position
    TermPtr notlong = parse_term("(\\f:o->o. (*:(o->o)->o) f) (\\y:o. y)");
    CHECK(is_closed(notlong));
    CHECK(notlong->type->is_ground());
    CHECK(!is_eta_long(notlong));
    CHECK_THROWS_AS(check_simulation(notlong, 10), Error);
    // not locally scoped: passive y free in the argument of (\z', y)
    TermPtr notls =
        parse_term("(*:(o->o)->o) (\\y:o. (\\x:o->o. (\\z':o. z') y) (\\z:o. z))");
    CHECK(is_eta_long(notls));
    CHECK(!scope_report(notls).locallyScoped);
    CHECK_THROWS_AS(check_simulation(notls, 10), Error);
}
