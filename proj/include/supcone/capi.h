#ifndef SUPCONE_CAPI_H
#define SUPCONE_CAPI_H

/* C interface to the verification library. All functions return a
 * status code; string outputs are heap-allocated UTF-8 JSON owned by
 * the caller and released with sc_string_free. On SC_ERROR a
 * description is available through sc_last_error. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as the CLI exit codes. */
#define SC_OK 0    /* success / all properties passed */
#define SC_FAIL 1  /* at least one property failed */
#define SC_ERROR 2 /* usage, parse or IO error */

typedef struct sc_model sc_model;

int sc_model_load(const char* path, sc_model** out);
int sc_model_from_json(const char* text, sc_model** out);
int sc_model_generate(uint64_t seed, sc_model** out);
int sc_model_save(const sc_model* m, const char* path);
int sc_model_to_json(const sc_model* m, char** out);
void sc_model_free(sc_model* m);

/* Runs one suite (or "all"). backend is "rational" or "float"; mutate
 * and model may be NULL; float_tol <= 0 selects the default 1e-9.
 * report_out (nullable) receives the JSON report even when properties
 * fail. Returns SC_FAIL iff the run completed with failures. */
int sc_run_suite(const char* suite, long trials, uint64_t seed, const char* backend,
                 const char* mutate, const sc_model* model, double float_tol,
                 char** report_out);

/* Evaluates an expression over the model's named vectors (exact
 * backend); result_out receives a JSON value. */
int sc_eval(const sc_model* m, const char* expr, char** result_out);

/* Newline-separated lists. */
int sc_suite_names(char** out);
int sc_mutation_ids(char** out);

const char* sc_last_error(void);
void sc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SUPCONE_CAPI_H */
