/* skellab — linear head reduction and interaction skeletons.
 *
 * C interface to the core library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions
 * return SKELLAB_OK or an error code; skellab_last_error() describes the
 * most recent failure on the calling thread. Strings returned through out
 * parameters are heap-allocated and released with skellab_string_free.
 */
#ifndef SKELLAB_H
#define SKELLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct skellab_term skellab_term;
typedef struct skellab_skel skellab_skel;
typedef struct skellab_trace skellab_trace;

typedef enum {
    SKELLAB_OK = 0,
    SKELLAB_ERR_SYNTAX = 1,
    SKELLAB_ERR_ILL_TYPED = 2,
    SKELLAB_ERR_NOT_A_VARIABLE = 3,
    SKELLAB_ERR_TYPE_MISMATCH = 4,
    SKELLAB_ERR_CAPTURE = 5,
    SKELLAB_ERR_DOMAIN = 6,
    SKELLAB_ERR_BUDGET = 7,
    SKELLAB_ERR_NOT_NUMERAL = 8,
    SKELLAB_ERR_PRECONDITION = 9,
    SKELLAB_ERR_INTERNAL = 10
} skellab_status;

const char* skellab_last_error(void);

void skellab_term_free(skellab_term* t);
void skellab_skel_free(skellab_skel* s);
void skellab_trace_free(skellab_trace* t);
void skellab_string_free(char* s);

/* ---- parsing and printing ---- */

skellab_status skellab_term_parse(const char* text, skellab_term** out);
skellab_status skellab_term_print(const skellab_term* t, char** out);
skellab_status skellab_term_type(const skellab_term* t, char** out);
skellab_status skellab_skel_parse(const char* text, skellab_skel** out);
skellab_status skellab_skel_print(const skellab_skel* s, char** out);

/* ---- term measures ---- */

typedef struct {
    uint64_t level, order, length, height, depth, local_height;
} skellab_term_measures;

typedef struct {
    uint64_t weighted_order, weighted_local_height, deficiency;
} skellab_weighted_measures;

skellab_status skellab_term_measure(const skellab_term* t, skellab_term_measures* out);
skellab_status skellab_term_measure_weighted(const skellab_term* t,
                                             skellab_weighted_measures* out);

/* locally_scoped / strongly_locally_scoped are 0 or 1; violations is a
 * rendered description of the Def 5.20 violations (empty when ls). */
skellab_status skellab_term_scope(const skellab_term* t, int* locally_scoped,
                                  int* strongly_locally_scoped, char** violations);

/* ---- reduction ---- */

typedef enum {
    SKELLAB_HALT_HEAD_CONSTANT = 0,
    SKELLAB_HALT_HEAD_UNMATCHED = 1,
    SKELLAB_HALT_BUDGET = 2
} skellab_halt_reason;

skellab_status skellab_lhr_run(const skellab_term* t, uint64_t step_budget, skellab_trace** out);
/* machine interpretation of the same term, with the empty environment */
skellab_status skellab_machine_run(const skellab_term* t, uint64_t step_budget,
                                   skellab_trace** out);

size_t skellab_trace_length(const skellab_trace* t);
skellab_halt_reason skellab_trace_halt(const skellab_trace* t);
/* i ranges over 0..length (inclusive: the last entry is the terminal term) */
skellab_status skellab_trace_term(const skellab_trace* t, size_t i, char** out);

skellab_status skellab_beta_normalize(const skellab_term* t, uint64_t step_budget,
                                      skellab_term** out);
/* value >= 0 when the beta-normal term is a Church numeral, -1 otherwise */
skellab_status skellab_numeral_value(const skellab_term* t, int64_t* value);

/* ---- transformations ---- */

skellab_status skellab_is_eta_long(const skellab_term* t, int* out);
skellab_status skellab_eta_long_normalize(const skellab_term* t, skellab_term** out);
skellab_status skellab_lambda_lift(const skellab_term* t, uint64_t step_budget,
                                   skellab_term** out);
skellab_status skellab_expand_variables(const skellab_term* t, skellab_term** out);
skellab_status skellab_ground_close(const skellab_term* t, skellab_term** out);

/* ---- skeletons ---- */

skellab_status skellab_interpret(const skellab_term* t, skellab_skel** out);
skellab_status skellab_skel_norm(const skellab_skel* s, uint64_t state_budget, uint64_t* out);
skellab_status skellab_skel_reduct_count(const skellab_skel* s, size_t* out);
skellab_status skellab_skel_reduct(const skellab_skel* s, size_t i, skellab_skel** out);
skellab_status skellab_skel_measures(const skellab_skel* s, uint64_t* order, uint64_t* max,
                                     uint64_t* depth);
skellab_status skellab_skel_embeds(const skellab_skel* a, const skellab_skel* b, int* out);

/* ---- bounds (rendered as decimal when small, 2_k^(top) otherwise) ---- */

skellab_status skellab_bound_thm416(const skellab_skel* s, char** out);
skellab_status skellab_bound_thm417(uint64_t n, uint64_t p, uint64_t d, char** out);
skellab_status skellab_bound_prop550(const skellab_term* t, char** out);
skellab_status skellab_bound_prop566(const skellab_term* t, char** out);

/* ---- lower-bound families ----
 * spec strings: "numeral:n,p"  "iter:n,p,k"  "S:n,k,p"  "U:n,d"  "B:k,p"   */
skellab_status skellab_gen_family(const char* spec, skellab_term** out);
skellab_status skellab_verify_lower_bound(const skellab_term* t, uint64_t step_budget,
                                          uint64_t* claimed, uint64_t* observed, int* ok);

/* ---- simulation (Prop 5.31 relaxed form) ---- */

skellab_status skellab_check_simulation(const skellab_term* t, uint64_t step_budget,
                                        uint64_t* steps, int* ok, char** detail);

/* ---- visible pointer structures ---- */

skellab_status skellab_star(uint32_t n, uint32_t p, uint32_t d, uint64_t node_budget,
                            uint64_t* n_d, uint64_t* maximal_count);

/* ---- verification harness ----
 * config: JSON object {"suites": [..], "corpusSize": n, "seed": n,
 * "stepBudget": n, "nodeBudget": n}; all fields optional, null/empty runs
 * everything. Returns line-delimited JSON records and the overall verdict. */
skellab_status skellab_harness_run(const char* config_json, char** records_jsonl, int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* SKELLAB_H */
