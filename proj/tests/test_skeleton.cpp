#include <doctest.h>

#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/skeleton.hpp"
#include "core/syntax.hpp"

using namespace skellab;

namespace {

// Independent oracle: longest-reduction search by plain recursion, no memo,
// no canonical tricks beyond what reducts itself does.
uint64_t norm_brute(const SkelPtr& a, int fuel = 64) {
    REQUIRE(fuel > 0);
    uint64_t best = 0;
    for (const SkelPtr& r : reducts(a)) best = std::max(best, 1 + norm_brute(r, fuel - 1));
    return best;
}

} // namespace

TEST_CASE("graft") {
    CHECK(print_skeleton(graft(Skeleton::atom(1), 2, Skeleton::atom(1))) == "1[{2}1]");
    SkelPtr base = parse_skeleton("4[{1}2]");
    CHECK(print_skeleton(graft(base, 3, Skeleton::atom(0))) == "4[{1}2,{3}0]");
    // grafting an existing identical child leaves the canonical form unchanged
    SkelPtr twice = graft(graft(Skeleton::atom(1), 2, Skeleton::atom(1)), 2, Skeleton::atom(1));
    CHECK(skel_eq(twice, parse_skeleton("1[{2}1]")));
}

TEST_CASE("join and sum") {
    CHECK(print_skeleton(join({parse_skeleton("2[{1}0]"), Skeleton::atom(3)})) == "3[{1}0]");
    CHECK(print_skeleton(skel_sum({Skeleton::atom(1), parse_skeleton("2[{1}0]")})) == "3[{1}0]");
    CHECK(print_skeleton(join({})) == "0");
    CHECK(print_skeleton(skel_sum({})) == "0");
}

TEST_CASE("reducts") {
    std::vector<SkelPtr> r = reducts(parse_skeleton("1[{2}1]"));
    REQUIRE(r.size() == 1);
    CHECK(print_skeleton(r[0]) == "1[{1}0[{2}1]]");
    CHECK(reducts(parse_skeleton("0[{5}7]")).empty());
    CHECK(reducts(parse_skeleton("3[{0}4]")).empty());  // d = 0 blocked
}

TEST_CASE("norm") {
    NormMemo memo;
    for (uint64_t n = 1; n <= 4; n++)
        for (uint64_t p = 1; p <= 4; p++)
            CHECK(memo.compute(Skeleton::make(n, {{2, Skeleton::atom(p)}}), {}) == 2 * n);
    CHECK(norm(parse_skeleton("1[{1}1]")) == 1);
    CHECK(norm(parse_skeleton("0[{3}9]")) == 0);
    // memoized search agrees with the brute-force oracle on small skeletons
    for (const SkelPtr& a : random_skeletons(23, 60, 2, 3, 2))
        CHECK(norm(a) == norm_brute(a));
    CHECK(norm(parse_skeleton("3[{1}0,{2}1,{2}1]")) == norm_brute(parse_skeleton("3[{1}0,{2}1]")));
    // budget is an interface, not an afterthought
    CHECK_THROWS_AS(norm(parse_skeleton("4[{3}4]"), {5}), Error);
}

TEST_CASE("norm decreases along every reduct") {
    NormMemo memo;
    for (const SkelPtr& a : random_skeletons(29, 40, 3, 3, 3)) {
        uint64_t na = memo.compute(a, {});
        for (const SkelPtr& r : reducts(a)) CHECK(memo.compute(r, {}) < na);
    }
}

TEST_CASE("embeds") {
    SkelPtr a = parse_skeleton("1[{1}0]");
    CHECK(embeds(a, a));
    CHECK(embeds(a, parse_skeleton("2[{3}1,{0}5]")));
    CHECK(!embeds(Skeleton::atom(2), Skeleton::atom(1)));
    CHECK(!embeds(parse_skeleton("1[{2}0]"), parse_skeleton("1[{1}3]")));
}

TEST_CASE("embedding is a simulation for the norm") {
    NormMemo memo;
    for (auto& [a, b] : random_embedded_pairs(31, 100, 2, 4, 3)) {
        REQUIRE(embeds(a, b));
        CHECK(memo.compute(a, {}) <= memo.compute(b, {}));
    }
}

TEST_CASE("lemma 4.4 embeddings") {
    auto pairs = random_embedded_pairs(37, 30, 2, 3, 2);
    std::vector<SkelPtr> as, bs;
    for (auto& [a, b] : pairs) {
        as.push_back(a);
        bs.push_back(b);
    }
    CHECK(embeds(join(as), join(bs)));
    CHECK(embeds(skel_sum(as), skel_sum(bs)));
    // |_|(a_i . b) embeds (|_| a_i) . b, and likewise for sums
    SkelPtr b = parse_skeleton("2[{1}1]");
    std::vector<SkelPtr> grafted;
    for (const SkelPtr& a : as) grafted.push_back(graft(a, 2, b));
    CHECK(embeds(join(grafted), graft(join(as), 2, b)));
    CHECK(embeds(skel_sum(grafted), graft(skel_sum(as), 2, b)));
    // a + b._d c embeds (a + b)._d c
    SkelPtr x = parse_skeleton("1[{1}2]");
    SkelPtr y = parse_skeleton("3[{2}0]");
    SkelPtr z = parse_skeleton("1");
    CHECK(embeds(skel_sum({x, graft(y, 2, z)}), graft(skel_sum({x, y}), 2, z)));
}

TEST_CASE("thread-like skeletons") {
    CHECK(print_skeleton(thread_like(1, 3, 5)) == "5");
    CHECK(print_skeleton(thread_like(2, 1, 1)) == "1[{1}1]");
    SkelMeasures m = skel_measures(thread_like(4, 2, 3));
    CHECK(m.depth == 4);
    CHECK(m.order == 2);
    CHECK(m.max == 3);
    CHECK_THROWS_AS(thread_like(0, 1, 1), Error);
}

TEST_CASE("thread-like domination") {
    NormMemo memo;
    for (const SkelPtr& a : random_skeletons(41, 60, 2, 3, 2)) {
        SkelMeasures m = skel_measures(a);
        if (m.order < 1 || m.max < 1) continue;
        SkelPtr t = thread_like(m.depth, m.order, m.max);
        CHECK(embeds(a, t));
        CHECK(memo.compute(a, {}) <= memo.compute(t, {}));
    }
}

TEST_CASE("skeleton measures") {
    SkelMeasures m = skel_measures(parse_skeleton("3[{1}0,{2}1,{2}1]"));
    CHECK(m.order == 2);
    CHECK(m.max == 3);
    CHECK(m.depth == 2);
    SkelMeasures atom = skel_measures(Skeleton::atom(7));
    CHECK(atom.order == 0);
    CHECK(atom.max == 7);
    CHECK(atom.depth == 1);
}

TEST_CASE("canonicalization does not change the norm") {
    // permuted and duplicated presentations parse to the same skeleton
    CHECK(skel_eq(parse_skeleton("3[{2}1,{1}0]"), parse_skeleton("3[{1}0,{2}1]")));
    // mutual embeddings have equal norms
    NormMemo memo;
    for (auto& [a, b] : random_embedded_pairs(43, 60, 2, 3, 2)) {
        if (embeds(b, a)) CHECK(memo.compute(a, {}) == memo.compute(b, {}));
    }
}
