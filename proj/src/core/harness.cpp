#include "harness.hpp"

#include <json.hpp>

#include "bounds.hpp"
#include "compile.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "pointers.hpp"
#include "reduction.hpp"
#include "skeleton.hpp"
#include "syntax.hpp"
#include "transforms.hpp"

namespace skellab {

using nlohmann::json;

size_t HarnessReport::failures() const {
    size_t n = 0;
    for (const auto& r : records)
        if (!r.ok) n++;
    return n;
}

std::string record_to_json(const CaseRecord& r) {
    json j;
    j["suite"] = r.suite;
    j["case"] = r.case_name;
    j["params"] = r.params.empty() ? json::object() : json::parse(r.params);
    j["observed"] = r.observed;
    j["bound"] = r.bound;
    j["ok"] = r.ok;
    return j.dump();
}

namespace {

struct Ctx {
    const HarnessConfig& cfg;
    std::vector<CaseRecord>& out;

    void add(const std::string& suite, const std::string& cname, json params,
             const std::string& observed, const std::string& bound, bool ok) {
        out.push_back({suite, cname, params.dump(), observed, bound, ok});
    }

    size_t corpus(size_t dflt) const { return cfg.corpus_size ? cfg.corpus_size : dflt; }
};

// Dershowitz-Manna order on multisets of naturals: compare the descending
// sequences lexicographically, a proper prefix being smaller.
bool multiset_lt(const std::multiset<uint64_t>& a, const std::multiset<uint64_t>& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return ia == a.rend() && ib != b.rend();
}

const char* kExample52 = "(\\f:o->o. \\x:o. f (f x)) (\\y:o. y) (*:o)";

const char* kExample52Steps[] = {
    "(\\f:o->o. \\x:o. (\\z:o. z) (f x)) (\\y:o. y) (*:o)",
    "(\\f:o->o. \\x:o. (\\z:o. f x) (f x)) (\\y:o. y) (*:o)",
    "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. u) x) (f x)) (\\y:o. y) (*:o)",
    "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. x) x) (f x)) (\\y:o. y) (*:o)",
    "(\\f:o->o. \\x:o. (\\z:o. (\\u:o. *:o) x) (f x)) (\\y:o. y) (*:o)",
};

void suite_example52(Ctx& c) {
    TermPtr m = parse_term(kExample52);
    LhrTrace tr = lhr_run(m, 1000);
    c.add("example52", "length", {}, std::to_string(tr.length()), "5", tr.length() == 5);
    c.add("example52", "halt", {}, tr.haltReason == HaltReason::HeadConstant ? "HeadConstant" : "other",
          "HeadConstant", tr.haltReason == HaltReason::HeadConstant);
    for (size_t i = 0; i < 5 && i < tr.length(); i++) {
        TermPtr expect = parse_term(kExample52Steps[i]);
        bool ok = alpha_eq(tr.term_at(i + 1), expect);
        c.add("example52", "step" + std::to_string(i + 1), {}, print_term(tr.term_at(i + 1)),
              kExample52Steps[i], ok);
    }
}

void suite_remark418(Ctx& c) {
    NormMemo memo;
    for (uint64_t n = 1; n <= 8; n++) {
        for (uint64_t p = 1; p <= 8; p++) {
            SkelPtr a = Skeleton::make(n, {{2, Skeleton::atom(p)}});
            uint64_t v = memo.compute(a, {c.cfg.node_budget});
            c.add("remark418", a->to_string(), {{"n", n}, {"p", p}}, std::to_string(v),
                  std::to_string(2 * n), v == 2 * n);
        }
    }
}

void suite_thm417(Ctx& c) {
    NormMemo memo;
    for (uint64_t d : {3, 4}) {
        for (uint64_t n = 1; n <= 3; n++) {
            for (uint64_t p = 1; p <= 3; p++) {
                SkelPtr a = Skeleton::make(n, {{d, Skeleton::atom(p)}});
                uint64_t v = memo.compute(a, {c.cfg.node_budget});
                TowerExpr b = bound_thm417(n, p, d);
                bool ok = tower_leq(BigInt(v), b);
                c.add("thm417", a->to_string(), {{"n", n}, {"p", p}, {"d", d}},
                      std::to_string(v), b.to_string(), ok);
            }
        }
    }
}

void suite_thm416(Ctx& c) {
    size_t want = c.corpus(200);
    std::vector<SkelPtr> all = random_skeletons(c.cfg.seed, want * 4, 3, 4, 3);
    NormMemo memo;
    size_t done = 0;
    for (const SkelPtr& a : all) {
        if (done >= want) break;
        SkelMeasures m = skel_measures(a);
        if (m.order < 1 || m.max < 1) continue;
        done++;
        uint64_t v = memo.compute(a, {c.cfg.node_budget});
        TowerExpr b = bound_thm416(a);
        c.add("thm416", a->to_string(),
              {{"ord", m.order}, {"depth", m.depth}, {"max", m.max}}, std::to_string(v),
              b.to_string(), tower_leq(BigInt(v), b));
    }
}

void suite_embedding(Ctx& c) {
    size_t want = c.corpus(200);
    NormMemo memo;
    for (auto& [a, b] : random_embedded_pairs(c.cfg.seed, want, 2, 4, 3)) {
        uint64_t na = memo.compute(a, {c.cfg.node_budget});
        uint64_t nb = memo.compute(b, {c.cfg.node_budget});
        bool emb = embeds(a, b);
        c.add("embedding", a->to_string() + " -> " + b->to_string(), {}, std::to_string(na),
              std::to_string(nb), emb && na <= nb);
    }
    // canonicalization: permuted and duplicated presentations normalize to the
    // same skeleton, hence the same norm
    SkelPtr x = parse_skeleton("3[{1}0,{2}1,{2}1]");
    SkelPtr y = parse_skeleton("3[{2}1,{1}0,{2}1,{2}1]");
    c.add("embedding", "canonical-merge", {}, y->to_string(), x->to_string(), skel_eq(x, y));
    for (auto& [a, b] : random_embedded_pairs(c.cfg.seed + 17, 50, 2, 3, 3)) {
        (void)b;
        if (embeds(a, b) && embeds(b, a)) {
            uint64_t na = memo.compute(a, {c.cfg.node_budget});
            uint64_t nb = memo.compute(b, {c.cfg.node_budget});
            c.add("embedding", "mutual", {}, std::to_string(na), std::to_string(nb), na == nb);
        }
    }
}

void suite_monotonicity(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_closed(c.cfg.seed, want, 20);
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        uint64_t steps = lhr_run(m, c.cfg.step_budget).length();
        json params = {{"term", print_term(m)}};
        // beta: every one-step reduct has <= steps
        bool beta_ok = true;
        uint64_t worst = 0;
        for (const TermPtr& r : all_beta_reducts(m)) {
            uint64_t s = lhr_run(r, c.cfg.step_budget).length();
            worst = std::max(worst, s);
            if (s > steps) beta_ok = false;
        }
        c.add("monotonicity", "beta#" + std::to_string(i), params, std::to_string(worst),
              "<= " + std::to_string(steps), beta_ok);
        // eta: every one-step expansion has >= steps
        bool eta_ok = true;
        uint64_t least = UINT64_MAX;
        for (const TermPtr& r : all_eta_expansions(m)) {
            uint64_t s = lhr_run(r, c.cfg.step_budget).length();
            least = std::min(least, s);
            if (s < steps) eta_ok = false;
        }
        c.add("monotonicity", "eta#" + std::to_string(i), params,
              least == UINT64_MAX ? "-" : std::to_string(least), ">= " + std::to_string(steps),
              eta_ok);
        // lambda-lift: one step preserves depth and does not lose steps
        if (std::optional<TermPtr> r = lambda_lift_step(m)) {
            uint64_t s = lhr_run(*r, c.cfg.step_budget).length();
            bool ok = s >= steps && term_depth(*r) == term_depth(m);
            c.add("monotonicity", "lift#" + std::to_string(i), params, std::to_string(s),
                  ">= " + std::to_string(steps), ok);
        }
    }
}

void suite_weighted(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_closed(c.cfg.seed + 3, want, 20);
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        TermMeasures tm = measures(m);
        WeightedMeasures wm = weighted_measures(m);
        json params = {{"term", print_term(m)}};
        bool ord_ok = tm.order <= wm.weightedOrder && wm.weightedOrder <= tm.order + 1;
        c.add("weighted", "ord'#" + std::to_string(i), params,
              std::to_string(wm.weightedOrder),
              "[" + std::to_string(tm.order) + "," + std::to_string(tm.order + 1) + "]", ord_ok);
        bool lh_ok = tm.localHeight <= wm.weightedLocalHeight &&
                     wm.weightedLocalHeight <= tm.localHeight + 1;
        c.add("weighted", "lh'#" + std::to_string(i), params,
              std::to_string(wm.weightedLocalHeight),
              "[" + std::to_string(tm.localHeight) + "," + std::to_string(tm.localHeight + 1) + "]",
              lh_ok);
        // invariance under one lambda-lift step
        if (std::optional<TermPtr> r = lambda_lift_step(m)) {
            WeightedMeasures wr = weighted_measures(*r);
            bool inv = wr.weightedOrder == wm.weightedOrder &&
                       wr.weightedLocalHeight == wm.weightedLocalHeight;
            c.add("weighted", "lift-invariance#" + std::to_string(i), params,
                  std::to_string(wr.weightedOrder) + "/" + std::to_string(wr.weightedLocalHeight),
                  std::to_string(wm.weightedOrder) + "/" + std::to_string(wm.weightedLocalHeight),
                  inv);
            bool dec = multiset_lt(wr.bindingDistances, wm.bindingDistances);
            c.add("weighted", "lift-multiset#" + std::to_string(i), params, "-", "strict decrease",
                  dec);
        }
        // deficiency strictly decreases along restricted eta-expansion
        if (std::optional<TermPtr> r = eta_restricted_step(m)) {
            bool dec = deficiency(*r) < wm.deficiency;
            c.add("weighted", "eta-deficiency#" + std::to_string(i), params,
                  std::to_string(deficiency(*r)), "< " + std::to_string(wm.deficiency), dec);
        }
    }
}

void suite_pipeline(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_closed(c.cfg.seed + 5, want, 20);
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        json params = {{"term", print_term(m)}};
        // lambda lifting reaches sls
        TermPtr lifted = lambda_lift_normalize(m);
        c.add("pipeline", "sls#" + std::to_string(i), params, "-", "sls",
              scope_report(lifted).stronglyLocallyScoped);
        // eta-long normalization: df 0, depth/ord preserved, lh grows by <= ord
        TermMeasures before = measures(m);
        TermPtr elong = eta_long_normalize(m);
        TermMeasures after = measures(elong);
        bool ok = deficiency(elong) == 0 && after.depth == before.depth &&
                  after.order == before.order &&
                  after.localHeight <= before.localHeight + before.order;
        c.add("pipeline", "etalong#" + std::to_string(i), params,
              "df=" + std::to_string(deficiency(elong)) + " lh=" + std::to_string(after.localHeight),
              "df=0 lh<=" + std::to_string(before.localHeight + before.order), ok);
        // expansion: lh <= 2 and depth <= height
        TermPtr ex = expand_variables(m);
        bool exok = term_local_height(ex) <= 2 && term_depth(ex) <= term_height(m);
        c.add("pipeline", "expand#" + std::to_string(i), params,
              "lh=" + std::to_string(term_local_height(ex)) +
                  " depth=" + std::to_string(term_depth(ex)),
              "lh<=2 depth<=" + std::to_string(term_height(m)), exok);
    }
}

void suite_prop536(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_game_situations(c.cfg.seed + 7, want);
    NormMemo memo;
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        TermMeasures tm = measures(m);
        SkelPtr a = interpret(m);
        SkelMeasures sm = skel_measures(a);
        uint64_t steps = lhr_run(m, c.cfg.step_budget).length();
        uint64_t nv = memo.compute(a, {c.cfg.node_budget});
        json params = {{"term", print_term(m)}, {"skeleton", a->to_string()}};
        bool ok = sm.depth <= tm.depth && sm.max <= tm.localHeight && sm.order <= tm.order &&
                  nv >= steps;
        c.add("prop536", "measures#" + std::to_string(i), params,
              "depth=" + std::to_string(sm.depth) + " max=" + std::to_string(sm.max) +
                  " ord=" + std::to_string(sm.order) + " norm=" + std::to_string(nv),
              "depth<=" + std::to_string(tm.depth) + " max<=" + std::to_string(tm.localHeight) +
                  " ord<=" + std::to_string(tm.order) + " norm>=" + std::to_string(steps),
              ok);
        SimulationReport rep = check_simulation(m, c.cfg.step_budget);
        c.add("prop536", "simulation#" + std::to_string(i), params,
              rep.ok ? "witnessed" : ("failed@" + std::to_string(*rep.failStep)),
              std::to_string(rep.steps) + " steps", rep.ok);
    }
}

void suite_machine(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_closed(c.cfg.seed + 11, want, 20);
    std::vector<TermPtr> gs = corpus_game_situations(c.cfg.seed + 13, want / 4 + 1);
    corpus.insert(corpus.end(), gs.begin(), gs.end());
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        LhrTrace a = lhr_run(m, c.cfg.step_budget);
        LhrTrace b = machine_run({m, empty_env()}, c.cfg.step_budget);
        bool ok = a.length() == b.length();
        for (size_t k = 0; ok && k <= a.length(); k++)
            ok = alpha_eq(a.term_at(k), b.term_at(k));
        c.add("machine", "equiv#" + std::to_string(i), {{"term", print_term(m)}},
              std::to_string(b.length()), std::to_string(a.length()), ok);
    }
}

void suite_lower(Ctx& c) {
    TermPtr u = family_U(2, 3);
    uint64_t us = lhr_run(u, c.cfg.step_budget).length();
    c.add("lower", "U(2,3)", {{"n", 2}, {"d", 3}}, std::to_string(us), ">= 8", us >= 8);

    LowerBoundResult s = verify_lower_bound(family_S(2, 1, 1), c.cfg.step_budget, c.cfg.step_budget);
    c.add("lower", "S(2,1,1)", {{"claimed", s.claimed}}, std::to_string(s.observed),
          ">= " + std::to_string(s.claimed), s.ok && s.claimed == 16);

    LowerBoundResult b = verify_lower_bound(family_B(1, 1), c.cfg.step_budget, c.cfg.step_budget);
    c.add("lower", "B(1,1)", {{"claimed", b.claimed}}, std::to_string(b.observed),
          ">= " + std::to_string(b.claimed), b.ok && b.claimed == 16);
}

void suite_prop566(Ctx& c) {
    size_t want = c.corpus(100);
    std::vector<TermPtr> corpus = corpus_closed(c.cfg.seed + 19, want, 20);
    for (size_t i = 0; i < corpus.size(); i++) {
        const TermPtr& m = corpus[i];
        uint64_t steps = lhr_run(m, c.cfg.step_budget).length();
        TowerExpr b = bound_prop566(m);
        c.add("prop566", "bound#" + std::to_string(i), {{"term", print_term(m)}},
              std::to_string(steps), b.to_string(), tower_leq(BigInt(steps), b));
        // sls corpus for prop 5.50
        TermPtr lifted = lambda_lift_normalize(m);
        uint64_t lsteps = lhr_run(lifted, c.cfg.step_budget).length();
        if (term_order(lifted) >= 1) {
            TowerExpr b550 = bound_prop550(lifted);
            c.add("prop566", "prop550#" + std::to_string(i), {{"term", print_term(lifted)}},
                  std::to_string(lsteps), b550.to_string(), tower_leq(BigInt(lsteps), b550));
        } else {
            c.add("prop566", "prop550-ord0#" + std::to_string(i), {{"term", print_term(lifted)}},
                  std::to_string(lsteps), "0", lsteps == 0);
        }
    }
}

void suite_prop310(Ctx& c) {
    NormMemo memo;
    for (uint32_t d : {2u, 3u}) {
        for (uint32_t n : {1u, 2u}) {
            for (uint32_t p : {1u, 2u}) {
                StarResult res = enumerate_star({n, p, d}, c.cfg.node_budget);
                SkelPtr a = Skeleton::make(n, {{d, Skeleton::atom(p)}});
                uint64_t nv = memo.compute(a, {c.cfg.node_budget});
                c.add("prop310", "N_" + std::to_string(d), {{"n", n}, {"p", p}, {"d", d}},
                      std::to_string(res.n_d), "<= " + std::to_string(nv + 1),
                      res.n_d <= nv + 1);
            }
        }
    }
}

void suite_lemma551(Ctx& c) {
    size_t want = c.corpus(40);
    std::vector<TermPtr> corpus = corpus_numeral_terms(c.cfg.seed + 23, want, 32);
    for (size_t i = 0; i < corpus.size(); i++) {
        LowerBoundResult r = verify_lower_bound(corpus[i], c.cfg.step_budget, c.cfg.step_budget);
        c.add("lemma551", "numeral#" + std::to_string(i), {{"claimed", r.claimed}},
              std::to_string(r.observed), ">= " + std::to_string(r.claimed), r.ok);
    }
}

} // namespace

std::vector<std::string> harness_suite_names() {
    return {"example52", "remark418", "thm417",  "thm416",  "embedding", "monotonicity",
            "weighted",  "pipeline",  "prop536", "machine", "lower",     "prop566",
            "prop310",   "lemma551"};
}

HarnessReport harness_run(const HarnessConfig& config) {
    HarnessReport rep;
    Ctx ctx{config, rep.records};
    auto enabled = [&](const std::string& s) {
        if (config.suites.empty()) return true;
        return std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end();
    };
    if (enabled("example52")) suite_example52(ctx);
    if (enabled("remark418")) suite_remark418(ctx);
    if (enabled("thm417")) suite_thm417(ctx);
    if (enabled("thm416")) suite_thm416(ctx);
    if (enabled("embedding")) suite_embedding(ctx);
    if (enabled("monotonicity")) suite_monotonicity(ctx);
    if (enabled("weighted")) suite_weighted(ctx);
    if (enabled("pipeline")) suite_pipeline(ctx);
    if (enabled("prop536")) suite_prop536(ctx);
    if (enabled("machine")) suite_machine(ctx);
    if (enabled("lower")) suite_lower(ctx);
    if (enabled("prop566")) suite_prop566(ctx);
    if (enabled("prop310")) suite_prop310(ctx);
    if (enabled("lemma551")) suite_lemma551(ctx);
    for (const auto& r : rep.records)
        if (!r.ok) rep.all_ok = false;
    return rep;
}

} // namespace skellab
