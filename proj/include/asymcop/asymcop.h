/*
 * C interface to the asymcop library.
 *
 * Objects are opaque handles created by asymcop_*_create/..._from_* calls and
 * released with the matching *_free function. Every fallible call returns an
 * asymcop_status; on failure a thread-local message is available from
 * asymcop_last_error() until the next call on the same thread.
 *
 * Strings returned through char** out-parameters are heap-allocated UTF-8
 * and must be released with asymcop_string_free(). JSON results carry a
 * top-level "schema": 1 field and have their keys sorted.
 *
 * Pass INFINITY (from <math.h>) as p for sup norms.
 */
#ifndef ASYMCOP_ASYMCOP_H
#define ASYMCOP_ASYMCOP_H

#include <stddef.h>
#include <stdint.h>

#if defined(ASYMCOP_BUILDING_LIBRARY)
#  define ASYMCOP_API __attribute__((visibility("default")))
#else
#  define ASYMCOP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum asymcop_status {
  ASYMCOP_OK = 0,
  ASYMCOP_ERR_INVALID_ARGUMENT = 1, /* bad parameter, unknown family, out of range */
  ASYMCOP_ERR_DOMAIN = 2,           /* evaluation failed at some point */
  ASYMCOP_ERR_IO = 3,               /* file missing or unreadable */
  ASYMCOP_ERR_PARSE = 4,            /* malformed CSV/JSON input */
  ASYMCOP_ERR_INTERNAL = 5
} asymcop_status;

typedef struct asymcop_spec asymcop_spec;
typedef struct asymcop_gridfn asymcop_gridfn;

ASYMCOP_API const char* asymcop_last_error(void);
ASYMCOP_API const char* asymcop_version(void);
ASYMCOP_API void asymcop_string_free(char* s);

/* ---- specs ------------------------------------------------------------ */

/* "name", "name:value" or a JSON object {"param": value, ...} in params_json
 * (may be NULL). */
ASYMCOP_API asymcop_status asymcop_spec_from_ref(const char* ref, asymcop_spec** out);
ASYMCOP_API asymcop_status asymcop_spec_from_family(const char* name, const char* params_json,
                                                    asymcop_spec** out);
ASYMCOP_API asymcop_status asymcop_spec_from_json(const char* json, asymcop_spec** out);
/* Rank-based empirical copula of two CSV columns (0-based index or header
 * name) tabulated at resolution n. */
ASYMCOP_API asymcop_status asymcop_spec_from_csv_sample(const char* path, const char* x_column,
                                                        const char* y_column, int n,
                                                        asymcop_spec** out);
ASYMCOP_API asymcop_status asymcop_spec_transpose(const asymcop_spec* spec, asymcop_spec** out);
ASYMCOP_API asymcop_status asymcop_spec_convex_combine(const asymcop_spec* first,
                                                       const asymcop_spec* second, double t,
                                                       asymcop_spec** out);
ASYMCOP_API void asymcop_spec_free(asymcop_spec* spec);

ASYMCOP_API asymcop_status asymcop_spec_evaluate(const asymcop_spec* spec, double u, double v,
                                                 double* out);
ASYMCOP_API asymcop_status asymcop_spec_to_json(const asymcop_spec* spec, char** out);
/* 1 when the spec is formula backed, 0 when interpolated. */
ASYMCOP_API int asymcop_spec_is_formula(const asymcop_spec* spec);
/* Default tolerance: 1e-9 for formula specs, 2/n otherwise. */
ASYMCOP_API double asymcop_spec_default_tolerance(const asymcop_spec* spec, int n);
/* Comma separated list of registered family names. */
ASYMCOP_API asymcop_status asymcop_family_list(char** out);

/* ---- grid functions --------------------------------------------------- */

ASYMCOP_API asymcop_status asymcop_gridfn_from_json(const char* json, asymcop_gridfn** out);
ASYMCOP_API asymcop_status asymcop_gridfn_from_csv(const char* csv, asymcop_gridfn** out);
ASYMCOP_API asymcop_status asymcop_gridfn_bracket(const asymcop_spec* spec, int n,
                                                  asymcop_gridfn** out);
ASYMCOP_API asymcop_status asymcop_gridfn_render(const asymcop_spec* spec, int n,
                                                 asymcop_gridfn** out);
ASYMCOP_API void asymcop_gridfn_free(asymcop_gridfn* f);
ASYMCOP_API int asymcop_gridfn_resolution(const asymcop_gridfn* f);
ASYMCOP_API asymcop_status asymcop_gridfn_norm(const asymcop_gridfn* f, double p, double* out);
ASYMCOP_API asymcop_status asymcop_gridfn_to_json(const asymcop_gridfn* f, char** out);
ASYMCOP_API asymcop_status asymcop_gridfn_to_csv(const asymcop_gridfn* f, char** out);

/* ---- analyses --------------------------------------------------------- */

/* Axiom report as JSON; *all_pass (optional) receives 1 or 0. */
ASYMCOP_API asymcop_status asymcop_check_axioms(const asymcop_spec* spec, int n, double tol,
                                                uint64_t seed, char** report_json,
                                                int* all_pass);
/* mu_p of the (a.e.) bracket; t is the decomposition threshold (1 by default
 * in the CLI). */
ASYMCOP_API asymcop_status asymcop_measure(const asymcop_spec* spec, double p, int n, double t,
                                           double* out);
ASYMCOP_API asymcop_status asymcop_compare_order(const asymcop_spec* first,
                                                 const asymcop_spec* second, int n, double tol,
                                                 char** verdict_json);
ASYMCOP_API asymcop_status asymcop_compare_equivalent(const asymcop_spec* first,
                                                      const asymcop_spec* second, int n,
                                                      double tol, char** verdict_json);
ASYMCOP_API asymcop_status asymcop_compare_tolerance(const asymcop_spec* first,
                                                     const asymcop_spec* second, double t,
                                                     double p, int n, char** verdict_json);
ASYMCOP_API asymcop_status asymcop_distinct_classes(const asymcop_spec* const* specs, size_t count,
                                                    int n, double tol, char** partition_json);
/* Calderon-Zygmund split of a nonnegative grid function. good_csv and
 * bad_csv are optional (NULL to skip). */
ASYMCOP_API asymcop_status asymcop_cz_decompose(const asymcop_gridfn* f, double t,
                                                char** decomposition_json, char** good_csv,
                                                char** bad_csv);
/* Most symmetric member of a registered family as `param` runs over [a, b];
 * other parameters come from base_params_json (may be NULL). scan_csv is
 * optional. */
ASYMCOP_API asymcop_status asymcop_sweep(const char* family, const char* base_params_json,
                                         const char* param, double a, double b, double p, int n,
                                         char** summary_json, char** scan_csv);
ASYMCOP_API asymcop_status asymcop_worked_example(double alpha, int n, double t,
                                                  char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* ASYMCOP_ASYMCOP_H */
