#ifndef CALIBRA_CALIBRA_H
#define CALIBRA_CALIBRA_H

/* C interface to the calibra library. Every function returns a status code;
 * on failure calibra_last_error() describes the problem for the calling
 * thread. Strings returned through char** are owned by the caller and must be
 * released with calibra_free_string(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CALIBRA_API __declspec(dllexport)
#else
#define CALIBRA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum calibra_status {
  CALIBRA_OK = 0,
  CALIBRA_INVALID_ARGUMENT = 1,
  CALIBRA_DIMENSION_MISMATCH = 2,
  CALIBRA_DEGREE_OVERFLOW = 3,
  CALIBRA_OUT_OF_REGION = 4,
  CALIBRA_PRECONDITION_FAILED = 5,
  CALIBRA_INFEASIBLE = 6,
  CALIBRA_RESOURCE_LIMIT = 7,
  CALIBRA_PARSE_ERROR = 8,
  CALIBRA_NON_FINITE = 9,
  CALIBRA_INTERNAL_ERROR = 10
} calibra_status;

typedef enum calibra_verdict {
  CALIBRA_VERDICT_NOT_PROBED = 0,
  CALIBRA_VERDICT_UNIQUE = 1,
  CALIBRA_VERDICT_MULTIPLE = 2,
  CALIBRA_VERDICT_UNKNOWN = 3
} calibra_verdict;

typedef struct calibra_form calibra_form;
typedef struct calibra_complex calibra_complex;
typedef struct calibra_chain calibra_chain;

CALIBRA_API const char* calibra_version(void);
CALIBRA_API const char* calibra_last_error(void);
CALIBRA_API const char* calibra_status_name(calibra_status status);
CALIBRA_API void calibra_free_string(char* s);

/* ---- forms ------------------------------------------------------------- */

typedef struct calibra_comass_options {
  int restarts;
  int iterations;
  uint64_t seed;
  int samples; /* sample points for non-constant forms */
} calibra_comass_options;

CALIBRA_API void calibra_comass_options_init(calibra_comass_options* options);

/* Catalog id as accepted by the library (volume, kahler[:p], slag-re[:theta],
 * coassociative, graph:..., scale:<c>:<id>). k and dim are used by ids
 * without intrinsic dimensions. */
CALIBRA_API calibra_status calibra_form_from_id(const char* id, int k, int dim, calibra_form** out);
CALIBRA_API void calibra_form_free(calibra_form* form);
CALIBRA_API calibra_status calibra_form_shape(const calibra_form* form, int* degree, int* dim);
CALIBRA_API calibra_status calibra_form_comass_at(const calibra_form* form, const double* point, size_t dim,
                                                  const calibra_comass_options* options, double* comass);
/* Full comass report as JSON: {form, comass, argmax_point, argmax_plane,
 * per_point_values}. */
CALIBRA_API calibra_status calibra_form_comass_report(const calibra_form* form,
                                                      const calibra_comass_options* options, char** json);

/* ---- verification of named examples ----------------------------------- */

typedef struct calibra_verify_options {
  int samples;
  uint64_t seed;
  double tolerance;
} calibra_verify_options;

CALIBRA_API void calibra_verify_options_init(calibra_verify_options* options);
/* Runs the checks of a named example and reports them as JSON
 * {example, checks: [{name, value, limit, pass}], pass}. *passed receives the
 * overall verdict. */
CALIBRA_API calibra_status calibra_verify(const char* example_id, const calibra_verify_options* options, char** json,
                                          int* passed);

/* ---- complexes and chains --------------------------------------------- */

CALIBRA_API calibra_status calibra_complex_from_json(const char* json, calibra_complex** out);
CALIBRA_API void calibra_complex_free(calibra_complex* complex);
CALIBRA_API calibra_status calibra_complex_count(const calibra_complex* complex, int degree, int* count);

CALIBRA_API calibra_status calibra_chain_from_json(const calibra_complex* complex, const char* json,
                                                   calibra_chain** out);
/* Chain with coefficient coeffs[i] on the i-th simplex of the given degree. */
CALIBRA_API calibra_status calibra_chain_from_dense(const calibra_complex* complex, int degree, const int64_t* coeffs,
                                                    size_t count, calibra_chain** out);
CALIBRA_API void calibra_chain_free(calibra_chain* chain);
CALIBRA_API calibra_status calibra_chain_to_json(const calibra_chain* chain, char** json);
CALIBRA_API calibra_status calibra_chain_degree(const calibra_chain* chain, int* degree);
CALIBRA_API calibra_status calibra_chain_mass(const calibra_chain* chain, double* mass);
CALIBRA_API calibra_status calibra_chain_boundary(const calibra_chain* chain, calibra_chain** out);
/* T(phi) by simplex quadrature of the given order. */
CALIBRA_API calibra_status calibra_chain_pair(const calibra_chain* chain, const calibra_form* form, int quad_order,
                                              double* value);
/* Density ratios at `point` for each radius. */
CALIBRA_API calibra_status calibra_chain_density(const calibra_chain* chain, const double* point, size_t dim,
                                                 const double* radii, size_t count, int levels, double* out);
/* S with boundary S = T. *found is 0 when the cycle bounds nothing in the
 * complex; *out is then NULL. */
CALIBRA_API calibra_status calibra_chain_fill(const calibra_chain* chain, int* found, calibra_chain** out);

/* ---- Plateau problem --------------------------------------------------- */

typedef struct calibra_plateau_options {
  int probe_trials;      /* 0: no uniqueness probe */
  int run_oracle;        /* nonzero: also run the exhaustive oracle */
  int oracle_bound;      /* coefficient bound for the oracle */
  int oracle_max_simplices;
  uint64_t seed;
  long node_limit;
  const char* certificate_json; /* optional cochain overriding the instance's */
} calibra_plateau_options;

CALIBRA_API void calibra_plateau_options_init(calibra_plateau_options* options);
/* Solves the instance (complex JSON plus k, boundary, optional candidate and
 * certificate) and writes the solution report. */
CALIBRA_API calibra_status calibra_plateau_solve(const char* instance_json, const calibra_plateau_options* options,
                                                 char** report_json, calibra_verdict* verdict);

#ifdef __cplusplus
}
#endif

#endif
