#include <doctest.h>

#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/syntax.hpp"
#include "core/term.hpp"

using namespace skellab;

namespace {

TypePtr o() { return Type::ground(); }
TypePtr oo() { return Type::arrow(o(), o()); }

} // namespace

TEST_CASE("type levels") {
    CHECK(o()->level() == 0);
    CHECK(oo()->level() == 1);
    // lv(A->B) = max(lv(A)+1, lv(B))
    TypePtr t = Type::arrow(oo(), o());  // (o->o)->o
    CHECK(t->level() == 2);
    CHECK(Type::arrow(o(), oo())->level() == 1);
    CHECK(church_type(0)->level() == 2);  // (o->o)->o->o
    CHECK(type_eq(church_type(-2), o()));
}

TEST_CASE("typecheck examples") {
    CHECK(type_eq(typecheck(parse_term("\\x:o. x")), oo()));
    CHECK(type_eq(typecheck(parse_term("(\\x:o. x) (*:o)")), o()));
    CHECK_THROWS_AS(parse_term("(\\x:o. x) (\\y:o. y)"), Error);
    // annotated binder level formula holds on random types
    TermGen g(7);
    for (int i = 0; i < 50; i++) {
        TypePtr t = g.random_type(3, 8);
        if (!t->is_ground())
            CHECK(t->level() ==
                  std::max(t->dom()->level() + 1, t->cod()->level()));
    }
}

TEST_CASE("barendregt") {
    // shadowing removed
    TermPtr shadow = Term::mk_abs(1, "x", o(), Term::mk_abs(1, "x", o(), Term::mk_var(1, "x", o())));
    TermPtr b = barendregt(shadow);
    CHECK(alpha_eq(shadow, b));
    CHECK(b->var != b->body->var);
    // already hygienic input: structurally equal modulo ids
    TermPtr id = parse_term("\\x:o. x");
    CHECK(alpha_eq(id, barendregt(id)));
    // two sibling copies get distinct ids
    TermPtr twice = Term::mk_app(parse_term("\\x:o->o. x"), parse_term("\\x:o. x"));
    TermPtr tb = barendregt(twice);
    CHECK(tb->fn->var != tb->arg->var);
    CHECK(alpha_eq(twice, tb));
}

TEST_CASE("substitute_occurrence") {
    // x y [*:o / y] -> x (*:o)
    TermPtr xy = Term::mk_app(Term::mk_var(1, "x", oo()), Term::mk_var(2, "y", o()));
    TermPtr subst = substitute_occurrence(xy, {Step::Arg}, Term::mk_const(o()));
    CHECK(subst->arg->kind == TermKind::Const);
    CHECK(subst->fn->kind == TermKind::Var);

    // first lhr step of Example 5.2: head f replaced by a fresh copy of \y.y
    TermPtr m0 = parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)");
    // the head occurrence is at ffbbff... find it: fn fn body body fn fn
    OccPath head = {Step::Fn, Step::Fn, Step::Body, Step::Body, Step::Fn, Step::Fn};
    CHECK(resolve(m0, head)->kind == TermKind::Var);
    TermPtr arg = resolve(m0, {Step::Fn, Step::Arg});
    TermPtr stepped = substitute_occurrence(m0, head, arg);
    CHECK(alpha_eq(stepped, parse_term("(\\f:o->o. \\x:o. (\\z:o. z) (f x)) (\\y:o. y) (*:o)")));

    // errors
    CHECK_THROWS_AS(substitute_occurrence(xy, {}, Term::mk_const(o())), Error); // App node
    CHECK_THROWS_AS(substitute_occurrence(xy, {Step::Arg}, Term::mk_const(oo())), Error);
}

TEST_CASE("substitute_occurrence capture") {
    // replacement refers to a binder that does not scope the target
    // term: (\x:o. x) (\w:o. w), replace the x occurrence by w
    TermPtr inner = parse_term("\\w:o. w");
    TermPtr term = Term::mk_app(parse_term("\\x:o->o. *:o"), inner);
    TermPtr loose = Term::mk_var(inner->var, "w", o());
    CHECK_THROWS_AS(
        substitute_occurrence(term, OccPath{Step::Fn, Step::Body}, loose) /* *: not var */, Error);
    TermPtr term2 = Term::mk_app(parse_term("\\x:o. x"), Term::mk_const(o()));
    CHECK_THROWS_AS(substitute_occurrence(term2, OccPath{Step::Fn, Step::Body}, loose), Error);
}

TEST_CASE("measures") {
    TermPtr m0 = parse_term("(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)");
    TermMeasures m = measures(m0);
    CHECK(m.order == 2);
    CHECK(m.depth == 2);
    CHECK(m.localHeight == 3);
    CHECK(m.height == 3);
    CHECK(m.length == 8);

    TermMeasures c = measures(Term::mk_const(o()));
    CHECK(c.length == 1);
    CHECK(c.height == 0);
    CHECK(c.localHeight == 0);
    CHECK(c.depth == 1);

    TermMeasures id = measures(parse_term("\\x:o. x"));
    CHECK(id.localHeight == 1);
    CHECK(id.order == 1);
}

TEST_CASE("free_vars") {
    CHECK(free_vars(parse_term("\\x:o. x")).empty());
    TermPtr open = Term::mk_abs(1, "x", o(), Term::mk_app(Term::mk_var(2, "x2", oo()),
                                                          Term::mk_var(1, "x", o())));
    CHECK(free_vars(open) == std::set<VarId>{2});
    CHECK(free_vars(Term::mk_const(o())).empty());
}

TEST_CASE("measure invariants on random corpus") {
    for (const TermPtr& t : corpus_closed(11, 40, 20)) {
        TermPtr b = barendregt(t);
        CHECK(alpha_eq(t, b));
        TermMeasures mt = measures(t);
        TermMeasures mb = measures(b);
        CHECK(mt.order == mb.order);
        CHECK(mt.depth == mb.depth);
        CHECK(mt.localHeight == mb.localHeight);
        CHECK(mt.length == mb.length);
        CHECK(mt.height == mb.height);
        CHECK(mt.depth >= 1);
        CHECK(mt.height <= mt.length);
        // binder ids pairwise distinct
        std::set<VarId> seen;
        bool distinct = true;
        for_each_subterm(b, [&](const TermPtr& s, const OccPath&) {
            if (s->kind == TermKind::Abs && !seen.insert(s->var).second) distinct = false;
        });
        CHECK(distinct);
    }
}
