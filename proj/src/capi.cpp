#include "skellab.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <string>

#include "core/bounds.hpp"
#include "core/compile.hpp"
#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/harness.hpp"
#include "core/pointers.hpp"
#include "core/reduction.hpp"
#include "core/skeleton.hpp"
#include "core/syntax.hpp"
#include "core/transforms.hpp"

using namespace skellab;

struct skellab_term {
    TermPtr t;
};
struct skellab_skel {
    SkelPtr s;
};
struct skellab_trace {
    LhrTrace tr;
};

namespace {

thread_local std::string g_last_error;

skellab_status status_of(const Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
        case Err::Syntax: return SKELLAB_ERR_SYNTAX;
        case Err::IllTyped: return SKELLAB_ERR_ILL_TYPED;
        case Err::NotAVariable: return SKELLAB_ERR_NOT_A_VARIABLE;
        case Err::TypeMismatch: return SKELLAB_ERR_TYPE_MISMATCH;
        case Err::Capture: return SKELLAB_ERR_CAPTURE;
        case Err::DomainError: return SKELLAB_ERR_DOMAIN;
        case Err::BudgetExceeded: return SKELLAB_ERR_BUDGET;
        case Err::NotNumeral: return SKELLAB_ERR_NOT_NUMERAL;
        case Err::PreconditionFailed: return SKELLAB_ERR_PRECONDITION;
    }
    return SKELLAB_ERR_INTERNAL;
}

template <typename F>
skellab_status guarded(F&& f) {
    try {
        f();
        return SKELLAB_OK;
    } catch (const Error& e) {
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SKELLAB_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* skellab_last_error(void) { return g_last_error.c_str(); }

void skellab_term_free(skellab_term* t) { delete t; }
void skellab_skel_free(skellab_skel* s) { delete s; }
void skellab_trace_free(skellab_trace* t) { delete t; }
void skellab_string_free(char* s) { std::free(s); }

skellab_status skellab_term_parse(const char* text, skellab_term** out) {
    return guarded([&] { *out = new skellab_term{parse_term(text)}; });
}

skellab_status skellab_term_print(const skellab_term* t, char** out) {
    return guarded([&] { *out = dup_string(print_term(t->t)); });
}

skellab_status skellab_term_type(const skellab_term* t, char** out) {
    return guarded([&] { *out = dup_string(print_type(t->t->type)); });
}

skellab_status skellab_skel_parse(const char* text, skellab_skel** out) {
    return guarded([&] { *out = new skellab_skel{parse_skeleton(text)}; });
}

skellab_status skellab_skel_print(const skellab_skel* s, char** out) {
    return guarded([&] { *out = dup_string(print_skeleton(s->s)); });
}

skellab_status skellab_term_measure(const skellab_term* t, skellab_term_measures* out) {
    return guarded([&] {
        TermMeasures m = measures(t->t);
        *out = {m.level, m.order, m.length, m.height, m.depth, m.localHeight};
    });
}

skellab_status skellab_term_measure_weighted(const skellab_term* t,
                                             skellab_weighted_measures* out) {
    return guarded([&] {
        WeightedMeasures m = weighted_measures(t->t);
        *out = {m.weightedOrder, m.weightedLocalHeight, m.deficiency};
    });
}

skellab_status skellab_term_scope(const skellab_term* t, int* locally_scoped,
                                  int* strongly_locally_scoped, char** violations) {
    return guarded([&] {
        ScopeReport r = scope_report(t->t);
        *locally_scoped = r.locallyScoped ? 1 : 0;
        *strongly_locally_scoped = r.stronglyLocallyScoped ? 1 : 0;
        if (violations) {
            std::string text;
            for (const auto& [redex, v] : r.violations) {
                if (!text.empty()) text += "; ";
                text += "passive variable free in the argument of binder #" +
                        std::to_string(redex.binder) + " (var #" + std::to_string(v) + ")";
            }
            *violations = dup_string(text);
        }
    });
}

skellab_status skellab_lhr_run(const skellab_term* t, uint64_t step_budget, skellab_trace** out) {
    return guarded([&] { *out = new skellab_trace{lhr_run(t->t, step_budget)}; });
}

skellab_status skellab_machine_run(const skellab_term* t, uint64_t step_budget,
                                   skellab_trace** out) {
    return guarded(
        [&] { *out = new skellab_trace{machine_run({t->t, empty_env()}, step_budget)}; });
}

size_t skellab_trace_length(const skellab_trace* t) { return t->tr.length(); }

skellab_halt_reason skellab_trace_halt(const skellab_trace* t) {
    switch (t->tr.haltReason) {
        case HaltReason::HeadConstant: return SKELLAB_HALT_HEAD_CONSTANT;
        case HaltReason::HeadFreeOrUnmatched: return SKELLAB_HALT_HEAD_UNMATCHED;
        case HaltReason::BudgetExceeded: break;
    }
    return SKELLAB_HALT_BUDGET;
}

skellab_status skellab_trace_term(const skellab_trace* t, size_t i, char** out) {
    return guarded([&] {
        if (i > t->tr.length()) fail(Err::DomainError, "trace index out of range");
        *out = dup_string(print_term(t->tr.term_at(i)));
    });
}

skellab_status skellab_beta_normalize(const skellab_term* t, uint64_t step_budget,
                                      skellab_term** out) {
    return guarded([&] { *out = new skellab_term{beta_normalize(t->t, step_budget)}; });
}

skellab_status skellab_numeral_value(const skellab_term* t, int64_t* value) {
    return guarded([&] {
        std::optional<uint64_t> v = numeral_value(t->t);
        *value = v ? static_cast<int64_t>(*v) : -1;
    });
}

skellab_status skellab_is_eta_long(const skellab_term* t, int* out) {
    return guarded([&] { *out = is_eta_long(t->t) ? 1 : 0; });
}

skellab_status skellab_eta_long_normalize(const skellab_term* t, skellab_term** out) {
    return guarded([&] { *out = new skellab_term{eta_long_normalize(t->t)}; });
}

skellab_status skellab_lambda_lift(const skellab_term* t, uint64_t step_budget,
                                   skellab_term** out) {
    return guarded([&] { *out = new skellab_term{lambda_lift_normalize(t->t, step_budget)}; });
}

skellab_status skellab_expand_variables(const skellab_term* t, skellab_term** out) {
    return guarded([&] { *out = new skellab_term{expand_variables(t->t)}; });
}

skellab_status skellab_ground_close(const skellab_term* t, skellab_term** out) {
    return guarded([&] { *out = new skellab_term{ground_close(t->t)}; });
}

skellab_status skellab_interpret(const skellab_term* t, skellab_skel** out) {
    return guarded([&] { *out = new skellab_skel{interpret(t->t)}; });
}

skellab_status skellab_skel_norm(const skellab_skel* s, uint64_t state_budget, uint64_t* out) {
    return guarded([&] { *out = norm(s->s, {state_budget}); });
}

skellab_status skellab_skel_reduct_count(const skellab_skel* s, size_t* out) {
    return guarded([&] { *out = reducts(s->s).size(); });
}

skellab_status skellab_skel_reduct(const skellab_skel* s, size_t i, skellab_skel** out) {
    return guarded([&] {
        std::vector<SkelPtr> rs = reducts(s->s);
        if (i >= rs.size()) fail(Err::DomainError, "reduct index out of range");
        *out = new skellab_skel{rs[i]};
    });
}

skellab_status skellab_skel_measures(const skellab_skel* s, uint64_t* order, uint64_t* max,
                                     uint64_t* depth) {
    return guarded([&] {
        SkelMeasures m = skel_measures(s->s);
        *order = m.order;
        *max = m.max;
        *depth = m.depth;
    });
}

skellab_status skellab_skel_embeds(const skellab_skel* a, const skellab_skel* b, int* out) {
    return guarded([&] { *out = embeds(a->s, b->s) ? 1 : 0; });
}

skellab_status skellab_bound_thm416(const skellab_skel* s, char** out) {
    return guarded([&] { *out = dup_string(bound_thm416(s->s).to_string()); });
}

skellab_status skellab_bound_thm417(uint64_t n, uint64_t p, uint64_t d, char** out) {
    return guarded([&] { *out = dup_string(bound_thm417(n, p, d).to_string()); });
}

skellab_status skellab_bound_prop550(const skellab_term* t, char** out) {
    return guarded([&] { *out = dup_string(bound_prop550(t->t).to_string()); });
}

skellab_status skellab_bound_prop566(const skellab_term* t, char** out) {
    return guarded([&] { *out = dup_string(bound_prop566(t->t).to_string()); });
}

skellab_status skellab_gen_family(const char* spec, skellab_term** out) {
    return guarded([&] {
        std::string s(spec);
        size_t colon = s.find(':');
        if (colon == std::string::npos) fail(Err::DomainError, "family spec: NAME:i,j[,k]");
        std::string name = s.substr(0, colon);
        std::vector<uint64_t> idx;
        std::string rest = s.substr(colon + 1);
        size_t pos = 0;
        while (pos < rest.size()) {
            size_t comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
            idx.push_back(std::stoull(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        FamilySpec fs;
        if (name == "numeral" && idx.size() == 2)
            fs = {FamilySpec::Kind::Numeral, idx[0], idx[1], 0};
        else if (name == "iter" && idx.size() == 3)
            fs = {FamilySpec::Kind::Iter, idx[0], idx[1], idx[2]};
        else if (name == "S" && idx.size() == 3)
            fs = {FamilySpec::Kind::S, idx[0], idx[1], idx[2]};
        else if (name == "U" && idx.size() == 2)
            fs = {FamilySpec::Kind::U, idx[0], idx[1], 0};
        else if (name == "B" && idx.size() == 2)
            fs = {FamilySpec::Kind::B, idx[0], idx[1], 0};
        else
            fail(Err::DomainError, "unknown family spec " + s);
        *out = new skellab_term{gen_family(fs)};
    });
}

skellab_status skellab_verify_lower_bound(const skellab_term* t, uint64_t step_budget,
                                          uint64_t* claimed, uint64_t* observed, int* ok) {
    return guarded([&] {
        LowerBoundResult r = verify_lower_bound(t->t, step_budget, step_budget);
        *claimed = r.claimed;
        *observed = r.observed;
        *ok = r.ok ? 1 : 0;
    });
}

skellab_status skellab_check_simulation(const skellab_term* t, uint64_t step_budget,
                                        uint64_t* steps, int* ok, char** detail) {
    return guarded([&] {
        SimulationReport rep = check_simulation(t->t, step_budget);
        *steps = rep.steps;
        *ok = rep.ok ? 1 : 0;
        if (detail) {
            std::string d = rep.ok ? "witnessed all steps"
                                   : "no reduct embeds step " + std::to_string(*rep.failStep);
            *detail = dup_string(d);
        }
    });
}

skellab_status skellab_star(uint32_t n, uint32_t p, uint32_t d, uint64_t node_budget,
                            uint64_t* n_d, uint64_t* maximal_count) {
    return guarded([&] {
        StarResult r = enumerate_star({n, p, d}, node_budget);
        *n_d = r.n_d;
        *maximal_count = r.maximal_count;
    });
}

skellab_status skellab_harness_run(const char* config_json, char** records_jsonl, int* all_ok) {
    return guarded([&] {
        HarnessConfig cfg;
        if (config_json && *config_json) {
            nlohmann::json j = nlohmann::json::parse(config_json);
            if (j.contains("suites")) cfg.suites = j["suites"].get<std::vector<std::string>>();
            if (j.contains("corpusSize")) cfg.corpus_size = j["corpusSize"].get<size_t>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
            if (j.contains("stepBudget")) cfg.step_budget = j["stepBudget"].get<uint64_t>();
            if (j.contains("nodeBudget")) cfg.node_budget = j["nodeBudget"].get<uint64_t>();
        }
        HarnessReport rep = harness_run(cfg);
        std::string lines;
        for (const auto& r : rep.records) {
            lines += record_to_json(r);
            lines += '\n';
        }
        *records_jsonl = dup_string(lines);
        *all_ok = rep.all_ok ? 1 : 0;
    });
}

} // extern "C"
