// skellab command-line frontend. Talks to the core exclusively through the C
// API in skellab.h.
//
// Exit codes: 0 success, 1 property failure, 2 usage or input error.

#include <inttypes.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include <string>
#include <vector>

#include "skellab.h"

namespace {

struct Options {
    std::vector<std::string> positional;
    bool json = false;
    bool trace = false;
    uint64_t budget_steps = 100000;
    uint64_t budget_nodes = 1000000;
    uint64_t n = 0, p = 0, d = 2;
    bool has_npd = false;
    std::string suite;
    uint64_t corpus_size = 0;
    uint64_t seed = 1;
    std::string bound_kind;
};

void usage(FILE* out) {
    fprintf(out,
            "usage: skellab <command> [options] [arguments]\n"
            "\n"
            "commands:\n"
            "  parse <term>         parse and echo a term with its type\n"
            "  lhr [--trace] <term> run linear head reduction\n"
            "  machine <term>       run the closure machine (empty environment)\n"
            "  beta <term>          beta-normalize\n"
            "  measure <term>       level/order/length/height/depth/local height (+ weighted)\n"
            "  scope <term>         local-scope report\n"
            "  etalong <term>       eta-long normal form (restricted expansion)\n"
            "  lift <term>          lambda-lifting normal form\n"
            "  expand <term>        variable expansion exp(M)\n"
            "  compile <term>       interpretation as a skeleton\n"
            "  skel-norm <skel>     exact norm of a skeleton\n"
            "  skel-reduce <skel>   one-step reducts of a skeleton\n"
            "  bound --thm416 <skel> | --thm417 n p d | --prop550 <term> | --prop566 <term>\n"
            "  gen <family>         lower-bound families (numeral:n,p iter:n,p,k S:n,k,p U:n,d B:k,p)\n"
            "  lower <family|term>  Lemma 5.51 lower-bound check of M id_o\n"
            "  star --n N --p P --d D   exhaustive visible-pointer-structure search\n"
            "  verify [--suite NAME] [--corpus-size N] [--seed N]   run the harness\n"
            "\n"
            "options: --json, --budget-steps N, --budget-nodes N\n"
            "environment: SKELLAB_BUDGET_STEPS, SKELLAB_BUDGET_NODES override defaults\n");
}

int die_usage(const char* msg) {
    fprintf(stderr, "skellab: %s\n", msg);
    return 2;
}

int die_api(void) {
    fprintf(stderr, "skellab: %s\n", skellab_last_error());
    return 2;
}

bool parse_u64(const char* s, uint64_t* out) {
    char* end = nullptr;
    unsigned long long v = strtoull(s, &end, 10);
    if (!end || *end) return false;
    *out = v;
    return true;
}

struct TermHandle {
    skellab_term* t = nullptr;
    ~TermHandle() { skellab_term_free(t); }
};
struct SkelHandle {
    skellab_skel* s = nullptr;
    ~SkelHandle() { skellab_skel_free(s); }
};
struct StrHandle {
    char* s = nullptr;
    ~StrHandle() { skellab_string_free(s); }
};

void print_json_record(const char* suite, const char* case_name, const std::string& params,
                       const std::string& observed, const std::string& bound, bool ok) {
    printf("{\"suite\":\"%s\",\"case\":\"%s\",\"params\":%s,\"observed\":\"%s\",\"bound\":\"%s\","
           "\"ok\":%s}\n",
           suite, case_name, params.empty() ? "{}" : params.c_str(), observed.c_str(),
           bound.c_str(), ok ? "true" : "false");
}

int cmd_parse(const Options& o) {
    if (o.positional.size() != 1) return die_usage("parse expects one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    StrHandle printed, type;
    if (skellab_term_print(t.t, &printed.s) != SKELLAB_OK) return die_api();
    if (skellab_term_type(t.t, &type.s) != SKELLAB_OK) return die_api();
    if (o.json) {
        print_json_record("cli", "parse", "{}", printed.s, type.s, true);
    } else {
        printf("%s : %s\n", printed.s, type.s);
    }
    return 0;
}

int run_trace(const Options& o, bool machine) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    skellab_trace* tr = nullptr;
    skellab_status st = machine ? skellab_machine_run(t.t, o.budget_steps, &tr)
                                : skellab_lhr_run(t.t, o.budget_steps, &tr);
    if (st != SKELLAB_OK) return die_api();
    size_t len = skellab_trace_length(tr);
    skellab_halt_reason halt = skellab_trace_halt(tr);
    const char* why = halt == SKELLAB_HALT_HEAD_CONSTANT  ? "head constant"
                      : halt == SKELLAB_HALT_HEAD_UNMATCHED ? "head free or unmatched"
                                                            : "budget exceeded";
    if (o.json) {
        print_json_record(machine ? "machine" : "lhr", "run", "{}", std::to_string(len), why,
                          halt != SKELLAB_HALT_BUDGET);
    } else {
        if (o.trace) {
            for (size_t i = 0; i <= len; i++) {
                StrHandle step;
                if (skellab_trace_term(tr, i, &step.s) != SKELLAB_OK) {
                    skellab_trace_free(tr);
                    return die_api();
                }
                if (i == 0)
                    printf("     %s\n", step.s);
                else
                    printf("%4zu %s\n", i, step.s);
            }
        }
        printf("%zu steps, halt: %s\n", len, why);
    }
    skellab_trace_free(tr);
    return halt == SKELLAB_HALT_BUDGET ? 1 : 0;
}

int cmd_one_term_transform(const Options& o,
                           skellab_status (*f)(const skellab_term*, skellab_term**)) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    TermHandle r;
    if (f(t.t, &r.t) != SKELLAB_OK) return die_api();
    StrHandle printed;
    if (skellab_term_print(r.t, &printed.s) != SKELLAB_OK) return die_api();
    printf("%s\n", printed.s);
    return 0;
}

int cmd_beta(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    TermHandle r;
    if (skellab_beta_normalize(t.t, o.budget_steps, &r.t) != SKELLAB_OK) return die_api();
    StrHandle printed;
    if (skellab_term_print(r.t, &printed.s) != SKELLAB_OK) return die_api();
    int64_t v = -1;
    skellab_numeral_value(r.t, &v);
    if (v >= 0)
        printf("%s  (numeral %" PRId64 ")\n", printed.s, v);
    else
        printf("%s\n", printed.s);
    return 0;
}

int cmd_lift(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    TermHandle r;
    if (skellab_lambda_lift(t.t, o.budget_steps, &r.t) != SKELLAB_OK) return die_api();
    StrHandle printed;
    if (skellab_term_print(r.t, &printed.s) != SKELLAB_OK) return die_api();
    printf("%s\n", printed.s);
    return 0;
}

int cmd_measure(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    skellab_term_measures m;
    skellab_weighted_measures w;
    if (skellab_term_measure(t.t, &m) != SKELLAB_OK) return die_api();
    if (skellab_term_measure_weighted(t.t, &w) != SKELLAB_OK) return die_api();
    if (o.json) {
        printf("{\"suite\":\"cli\",\"case\":\"measure\",\"params\":{},\"observed\":"
               "{\"level\":%" PRIu64 ",\"order\":%" PRIu64 ",\"length\":%" PRIu64
               ",\"height\":%" PRIu64 ",\"depth\":%" PRIu64 ",\"localHeight\":%" PRIu64
               ",\"weightedOrder\":%" PRIu64 ",\"weightedLocalHeight\":%" PRIu64
               ",\"deficiency\":%" PRIu64 "},\"bound\":\"\",\"ok\":true}\n",
               m.level, m.order, m.length, m.height, m.depth, m.local_height, w.weighted_order,
               w.weighted_local_height, w.deficiency);
    } else {
        printf("level        %" PRIu64 "\n", m.level);
        printf("order        %" PRIu64 "  (weighted %" PRIu64 ")\n", m.order, w.weighted_order);
        printf("length       %" PRIu64 "\n", m.length);
        printf("height       %" PRIu64 "\n", m.height);
        printf("depth        %" PRIu64 "\n", m.depth);
        printf("local height %" PRIu64 "  (weighted %" PRIu64 ")\n", m.local_height,
               w.weighted_local_height);
        printf("deficiency   %" PRIu64 "\n", w.deficiency);
    }
    return 0;
}

int cmd_scope(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    int ls = 0, sls = 0;
    StrHandle viol;
    if (skellab_term_scope(t.t, &ls, &sls, &viol.s) != SKELLAB_OK) return die_api();
    printf("locally scoped:          %s\n", ls ? "yes" : "no");
    printf("strongly locally scoped: %s\n", sls ? "yes" : "no");
    if (!ls) printf("violations: %s\n", viol.s);
    return 0;
}

int cmd_compile(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one term");
    TermHandle t;
    if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    SkelHandle s;
    if (skellab_interpret(t.t, &s.s) != SKELLAB_OK) return die_api();
    StrHandle printed;
    if (skellab_skel_print(s.s, &printed.s) != SKELLAB_OK) return die_api();
    printf("%s\n", printed.s);
    return 0;
}

int cmd_skel_norm(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one skeleton");
    SkelHandle s;
    if (skellab_skel_parse(o.positional[0].c_str(), &s.s) != SKELLAB_OK) return die_api();
    uint64_t v = 0;
    if (skellab_skel_norm(s.s, o.budget_nodes, &v) != SKELLAB_OK) return die_api();
    printf("%" PRIu64 "\n", v);
    return 0;
}

int cmd_skel_reduce(const Options& o) {
    if (o.positional.size() != 1) return die_usage("expected one skeleton");
    SkelHandle s;
    if (skellab_skel_parse(o.positional[0].c_str(), &s.s) != SKELLAB_OK) return die_api();
    size_t count = 0;
    if (skellab_skel_reduct_count(s.s, &count) != SKELLAB_OK) return die_api();
    for (size_t i = 0; i < count; i++) {
        SkelHandle r;
        if (skellab_skel_reduct(s.s, i, &r.s) != SKELLAB_OK) return die_api();
        StrHandle printed;
        if (skellab_skel_print(r.s, &printed.s) != SKELLAB_OK) return die_api();
        printf("%s\n", printed.s);
    }
    return 0;
}

int cmd_bound(const Options& o) {
    StrHandle b;
    if (o.bound_kind == "thm416") {
        if (o.positional.size() != 1) return die_usage("bound --thm416 expects a skeleton");
        SkelHandle s;
        if (skellab_skel_parse(o.positional[0].c_str(), &s.s) != SKELLAB_OK) return die_api();
        if (skellab_bound_thm416(s.s, &b.s) != SKELLAB_OK) return die_api();
    } else if (o.bound_kind == "thm417") {
        if (o.positional.size() != 3) return die_usage("bound --thm417 expects n p d");
        uint64_t n, p, d;
        if (!parse_u64(o.positional[0].c_str(), &n) || !parse_u64(o.positional[1].c_str(), &p) ||
            !parse_u64(o.positional[2].c_str(), &d))
            return die_usage("bound --thm417 expects numbers");
        if (skellab_bound_thm417(n, p, d, &b.s) != SKELLAB_OK) return die_api();
    } else if (o.bound_kind == "prop550" || o.bound_kind == "prop566") {
        if (o.positional.size() != 1) return die_usage("bound expects one term");
        TermHandle t;
        if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
        skellab_status st = o.bound_kind == "prop550" ? skellab_bound_prop550(t.t, &b.s)
                                                      : skellab_bound_prop566(t.t, &b.s);
        if (st != SKELLAB_OK) return die_api();
    } else {
        return die_usage("bound needs --thm416 | --thm417 | --prop550 | --prop566");
    }
    printf("%s\n", b.s);
    return 0;
}

int cmd_gen(const Options& o) {
    if (o.positional.size() != 1) return die_usage("gen expects a family spec");
    TermHandle t;
    if (skellab_gen_family(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    StrHandle printed, type;
    if (skellab_term_print(t.t, &printed.s) != SKELLAB_OK) return die_api();
    if (skellab_term_type(t.t, &type.s) != SKELLAB_OK) return die_api();
    printf("%s : %s\n", printed.s, type.s);
    return 0;
}

int cmd_lower(const Options& o) {
    if (o.positional.size() != 1) return die_usage("lower expects a family spec or a term");
    TermHandle t;
    if (skellab_gen_family(o.positional[0].c_str(), &t.t) != SKELLAB_OK) {
        if (skellab_term_parse(o.positional[0].c_str(), &t.t) != SKELLAB_OK) return die_api();
    }
    uint64_t claimed = 0, observed = 0;
    int ok = 0;
    if (skellab_verify_lower_bound(t.t, o.budget_steps, &claimed, &observed, &ok) != SKELLAB_OK)
        return die_api();
    if (o.json) {
        print_json_record("lower", "verify", "{}", std::to_string(observed),
                          ">= " + std::to_string(claimed), ok != 0);
    } else {
        printf("claimed %" PRIu64 ", observed %" PRIu64 ": %s\n", claimed, observed,
               ok ? "ok" : "VIOLATION");
    }
    return ok ? 0 : 1;
}

int cmd_star(const Options& o) {
    if (!o.has_npd) return die_usage("star expects --n N --p P --d D");
    uint64_t n_d = 0, maximal = 0;
    if (skellab_star(static_cast<uint32_t>(o.n), static_cast<uint32_t>(o.p),
                     static_cast<uint32_t>(o.d), o.budget_nodes, &n_d, &maximal) != SKELLAB_OK)
        return die_api();
    char skel[64];
    snprintf(skel, sizeof skel, "%" PRIu64 "[{%" PRIu64 "}%" PRIu64 "]", o.n, o.d, o.p);
    skellab_skel* s = nullptr;
    uint64_t nv = 0;
    bool have_norm = skellab_skel_parse(skel, &s) == SKELLAB_OK &&
                     skellab_skel_norm(s, o.budget_nodes, &nv) == SKELLAB_OK;
    skellab_skel_free(s);
    if (o.json) {
        std::string params = "{\"n\":" + std::to_string(o.n) + ",\"p\":" + std::to_string(o.p) +
                             ",\"d\":" + std::to_string(o.d) + "}";
        print_json_record("star", "n_d", params, std::to_string(n_d),
                          have_norm ? "<= " + std::to_string(nv + 1) : "",
                          !have_norm || n_d <= nv + 1);
    } else {
        printf("N_%" PRIu64 "(%" PRIu64 ",%" PRIu64 ") = %" PRIu64 "  (%" PRIu64
               " maximal plays)\n",
               o.d, o.n, o.p, n_d, maximal);
        if (have_norm)
            printf("norm(%s) + 1 = %" PRIu64 "  (N <= norm+1: %s)\n", skel, nv + 1,
                   n_d <= nv + 1 ? "ok" : "VIOLATION");
    }
    if (have_norm && n_d > nv + 1) return 1;
    return 0;
}

int cmd_verify(const Options& o) {
    std::string cfg = "{";
    bool first = true;
    auto add = [&](const std::string& kv) {
        if (!first) cfg += ',';
        cfg += kv;
        first = false;
    };
    if (!o.suite.empty()) add("\"suites\":[\"" + o.suite + "\"]");
    if (o.corpus_size) add("\"corpusSize\":" + std::to_string(o.corpus_size));
    add("\"seed\":" + std::to_string(o.seed));
    add("\"stepBudget\":" + std::to_string(o.budget_steps));
    add("\"nodeBudget\":" + std::to_string(o.budget_nodes));
    cfg += '}';

    char* records = nullptr;
    int all_ok = 0;
    if (skellab_harness_run(cfg.c_str(), &records, &all_ok) != SKELLAB_OK) return die_api();
    if (o.json) {
        fputs(records, stdout);
    } else {
        // summarize per suite; print every failing case
        std::string text(records);
        size_t pos = 0, total = 0, failed = 0;
        while (pos < text.size()) {
            size_t nl = text.find('\n', pos);
            if (nl == std::string::npos) break;
            std::string line = text.substr(pos, nl - pos);
            pos = nl + 1;
            total++;
            if (line.find("\"ok\":false") != std::string::npos) {
                failed++;
                printf("FAIL %s\n", line.c_str());
            }
        }
        printf("%zu checks, %zu failures\n", total, failed);
    }
    skellab_string_free(records);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return 2;
    }
    std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        usage(stdout);
        return 0;
    }

    Options o;
    if (const char* e = getenv("SKELLAB_BUDGET_STEPS")) parse_u64(e, &o.budget_steps);
    if (const char* e = getenv("SKELLAB_BUDGET_NODES")) parse_u64(e, &o.budget_nodes);

    for (int i = 2; i < argc; i++) {
        std::string a = argv[i];
        auto next = [&](uint64_t* out) {
            if (i + 1 >= argc || !parse_u64(argv[++i], out)) {
                fprintf(stderr, "skellab: %s expects a number\n", a.c_str());
                exit(2);
            }
        };
        if (a == "--json") o.json = true;
        else if (a == "--trace") o.trace = true;
        else if (a == "--budget-steps") next(&o.budget_steps);
        else if (a == "--budget-nodes") next(&o.budget_nodes);
        else if (a == "--n") { next(&o.n); o.has_npd = true; }
        else if (a == "--p") next(&o.p);
        else if (a == "--d") next(&o.d);
        else if (a == "--corpus-size") next(&o.corpus_size);
        else if (a == "--seed") next(&o.seed);
        else if (a == "--suite") {
            if (i + 1 >= argc) return die_usage("--suite expects a name");
            o.suite = argv[++i];
        } else if (a == "--thm416" || a == "--thm417" || a == "--prop550" || a == "--prop566") {
            o.bound_kind = a.substr(2);
        } else if (a.rfind("--", 0) == 0) {
            fprintf(stderr, "skellab: unknown option %s\n", a.c_str());
            return 2;
        } else {
            o.positional.push_back(a);
        }
    }

    if (cmd == "parse") return cmd_parse(o);
    if (cmd == "lhr") return run_trace(o, false);
    if (cmd == "machine") return run_trace(o, true);
    if (cmd == "beta") return cmd_beta(o);
    if (cmd == "measure") return cmd_measure(o);
    if (cmd == "scope") return cmd_scope(o);
    if (cmd == "etalong") return cmd_one_term_transform(o, skellab_eta_long_normalize);
    if (cmd == "lift") return cmd_lift(o);
    if (cmd == "expand") return cmd_one_term_transform(o, skellab_expand_variables);
    if (cmd == "compile") return cmd_compile(o);
    if (cmd == "skel-norm") return cmd_skel_norm(o);
    if (cmd == "skel-reduce") return cmd_skel_reduce(o);
    if (cmd == "bound") return cmd_bound(o);
    if (cmd == "gen") return cmd_gen(o);
    if (cmd == "lower") return cmd_lower(o);
    if (cmd == "star") return cmd_star(o);
    if (cmd == "verify") return cmd_verify(o);

    fprintf(stderr, "skellab: unknown command %s\n", cmd.c_str());
    usage(stderr);
    return 2;
}
