/* permqubo — permutation problems (TSP, QAP) as penalized QUBOs, penalty
 * weight calculators, and a single-flip annealer with dynamic energy offset.
 *
 * C API over opaque handles.  Every fallible call returns a pq_status and,
 * when err_msg is non-NULL, writes a one-line reason into it (at most
 * PQ_ERROR_MSG_SIZE bytes including the terminator).  Returned strings are
 * owned by the caller and released with pq_string_free; handles with their
 * matching *_free function.
 */
#ifndef PERMQUBO_H
#define PERMQUBO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PQ_API __declspec(dllexport)
#else
#define PQ_API __attribute__((visibility("default")))
#endif

#define PQ_ERROR_MSG_SIZE 256

typedef enum {
    PQ_OK = 0,
    PQ_ERR_PARSE = 1,
    PQ_ERR_ARGUMENT = 2,
    PQ_ERR_CAPACITY = 3,
    PQ_ERR_METHOD = 4,
    PQ_ERR_OVERFLOW = 5,
    PQ_ERR_IO = 6,
    PQ_ERR_CONFIG = 7,
    PQ_ERR_INTERNAL = 8
} pq_status;

typedef enum { PQ_PROBLEM_TSP = 0, PQ_PROBLEM_QAP = 1 } pq_problem_kind;

typedef enum {
    PQ_METHOD_UB = 0,
    PQ_METHOD_MQC = 1,
    PQ_METHOD_VLM = 2,
    PQ_METHOD_MOMC = 3,
    PQ_METHOD_MOC = 4
} pq_method;

/* Bound conventions for the flip-bound based methods (VLM, MOMC, MOC):
 * PQ_CONV_TABLE reads coupling sums row-wise off the upper-triangular
 * storage (the convention behind the published weight tables for these
 * benchmarks); PQ_CONV_INVARIANT counts every incident coupling once per
 * endpoint and is storage-invariant. */
typedef enum { PQ_CONV_TABLE = 0, PQ_CONV_INVARIANT = 1 } pq_convention;

typedef struct pq_instance pq_instance;
typedef struct pq_qubo pq_qubo;
typedef struct pq_report pq_report;
typedef struct pq_results pq_results;

PQ_API const char* pq_version(void);
PQ_API void pq_string_free(char* s);

/* ---- instances ------------------------------------------------------- */

PQ_API pq_status pq_parse_tsplib(const char* text, pq_instance** out,
                                 char* err_msg);
PQ_API pq_status pq_parse_qaplib(const char* text, const char* name,
                                 pq_instance** out, char* err_msg);
/* Reads a file and parses it as TSPLIB or QAPLIB depending on kind. */
PQ_API pq_status pq_instance_from_file(const char* path, pq_problem_kind kind,
                                       pq_instance** out, char* err_msg);
/* Deterministic small instance for testing: TSP needs 3 <= n <= 10,
 * QAP 2 <= n <= 10. */
PQ_API pq_status pq_random_instance(pq_problem_kind kind, int n,
                                    unsigned long long seed, long long max_value,
                                    pq_instance** out, char* err_msg);
PQ_API int pq_instance_kind(const pq_instance* inst);
PQ_API int pq_instance_size(const pq_instance* inst);
PQ_API const char* pq_instance_name(const pq_instance* inst);
/* Canonical text (TSPLIB FULL_MATRIX or QAPLIB); reparses to an equal
 * instance. */
PQ_API pq_status pq_instance_to_text(const pq_instance* inst, char** out,
                                     char* err_msg);
PQ_API pq_status pq_instance_summary(const pq_instance* inst, char** out,
                                     char* err_msg);
PQ_API void pq_instance_free(pq_instance* inst);

/* ---- QUBO construction ------------------------------------------------ */

PQ_API pq_status pq_build_cost(const pq_instance* inst, pq_qubo** out,
                               char* err_msg);
/* One-hot constraint matrix on the same variable layout as `model`. */
PQ_API pq_status pq_build_constraint(const pq_qubo* model, pq_qubo** out,
                                     char* err_msg);
PQ_API pq_status pq_combine(const pq_qubo* cost, const pq_qubo* constraint,
                            long long alpha, pq_qubo** out, char* err_msg);
PQ_API long long pq_qubo_num_vars(const pq_qubo* q);
PQ_API long long pq_qubo_constant(const pq_qubo* q);
PQ_API pq_status pq_qubo_evaluate(const pq_qubo* q, const unsigned char* x,
                                  long long len, long long* energy,
                                  char* err_msg);
/* feasible is set to 1/0; when feasible, perm (capacity perm_cap) receives
 * the decoded permutation and *perm_len its length. */
PQ_API pq_status pq_qubo_decode(const pq_qubo* q, const unsigned char* x,
                                long long len, int* feasible, int* perm,
                                long long perm_cap, long long* perm_len,
                                char* err_msg);
PQ_API pq_status pq_qubo_to_text(const pq_qubo* q, char** out, char* err_msg);
PQ_API pq_status pq_qubo_from_text(const char* text, pq_qubo** out,
                                   char* err_msg);
PQ_API pq_status pq_qubo_to_json(const pq_qubo* q, char** out, char* err_msg);
PQ_API pq_status pq_qubo_from_json(const char* text, pq_qubo** out,
                                   char* err_msg);
PQ_API void pq_qubo_free(pq_qubo* q);

/* ---- penalty weights --------------------------------------------------- */

PQ_API pq_status pq_penalty_weights(const pq_qubo* cost,
                                    const pq_qubo* constraint, pq_report** out,
                                    char* err_msg);
PQ_API long long pq_report_alpha(const pq_report* rep, pq_method method,
                                 pq_convention conv);
PQ_API long long pq_report_gamma(const pq_report* rep);
PQ_API pq_status pq_report_to_json(const pq_report* rep, char** out,
                                   char* err_msg);
PQ_API pq_status pq_report_to_table(const pq_report* rep, char** out,
                                    char* err_msg);
PQ_API void pq_report_free(pq_report* rep);

/* ---- annealer ---------------------------------------------------------- */

typedef struct {
    double initial_temperature;
    double final_temperature;
    double decay;                 /* per-iteration: t <- max(tf, t*(1-decay)) */
    double offset_increase_rate;
    long long iterations;
    unsigned long long seed;
    int runs;
    int threads;
} pq_anneal_params;

PQ_API pq_anneal_params pq_anneal_params_default(void);
PQ_API pq_status pq_anneal(const pq_qubo* q, const pq_anneal_params* params,
                           pq_results** out, char* err_msg);
PQ_API int pq_results_count(const pq_results* res);
PQ_API long long pq_result_energy(const pq_results* res, int i);
PQ_API int pq_result_feasible(const pq_results* res, int i);
PQ_API long long pq_result_best_iteration(const pq_results* res, int i);
PQ_API long long pq_result_accepted_flips(const pq_results* res, int i);
/* Cost of the decoded permutation; PQ_ERR_METHOD when the run is infeasible. */
PQ_API pq_status pq_result_cost(const pq_results* res, int i, long long* cost,
                                char* err_msg);
PQ_API pq_status pq_result_bits(const pq_results* res, int i,
                                unsigned char* buf, long long cap,
                                char* err_msg);
PQ_API pq_status pq_result_permutation(const pq_results* res, int i, int* buf,
                                       long long cap, long long* len,
                                       char* err_msg);
PQ_API void pq_results_free(pq_results* res);

/* ---- oracle ------------------------------------------------------------ */

/* Exhaustive minimum over all 2^m states, m <= 24. */
PQ_API pq_status pq_brute_force(const pq_qubo* q, unsigned char* xbuf,
                                long long cap, long long* energy,
                                char* err_msg);
/* Validity report of C + alpha*G as JSON (feasible/infeasible minima and
 * strict/tie validity flags). */
PQ_API pq_status pq_check_validity(const pq_qubo* cost,
                                   const pq_qubo* constraint, long long alpha,
                                   char** json_out, char* err_msg);

/* ---- benchmark pipeline ------------------------------------------------ */

/* Runs the full experiment described by a JSON config (instances, methods,
 * temperature multipliers, runs, seeds, known optima) and returns the CSV
 * and JSON reports.  Either output pointer may be NULL. */
PQ_API pq_status pq_run_experiment(const char* config_json, char** csv_out,
                                   char** json_out, char* err_msg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PERMQUBO_H */
