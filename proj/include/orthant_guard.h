#ifndef ORTHANT_GUARD_H
#define ORTHANT_GUARD_H

/*
 * C interface to the orthant-guard library.
 *
 * Every fallible call returns an og_status. On failure a message describing
 * the error is available from og_last_error() on the same thread until the
 * next failing call. Handles are opaque and owned by the caller; release them
 * with the matching og_*_free. Strings returned through `char** out` are
 * allocated by the library and released with og_string_free.
 *
 * Indices in this interface (species, faces) are 0-based. The JSON documents
 * use 1-based face and component indices.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(OG_BUILDING_LIBRARY)
#define OG_API __attribute__((visibility("default")))
#else
#define OG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum og_status {
  OG_OK = 0,
  OG_ERR_INVALID_ARGUMENT = 1,
  OG_ERR_PARSE = 2,
  OG_ERR_MODEL = 3,
  OG_ERR_PRECONDITION = 4,
  OG_ERR_NUMERIC = 5,
  OG_ERR_NOT_FOUND = 6,
  OG_ERR_IO = 7,
  OG_ERR_INTERNAL = 8
} og_status;

typedef enum og_verdict { OG_SATISFIED = 0, OG_VIOLATED = 1, OG_MARGINAL = 2 } og_verdict;
typedef enum og_side { OG_SIDE_LOW = 0, OG_SIDE_HIGH = 1 } og_side;
typedef enum og_run_status { OG_RUN_COMPLETED = 0, OG_RUN_BLOW_UP = 1, OG_RUN_STEP_FAILURE = 2 } og_run_status;
typedef enum og_bc { OG_BC_NEUMANN = 0, OG_BC_DIRICHLET = 1 } og_bc;
typedef enum og_scheme { OG_SCHEME_IMEX = 0, OG_SCHEME_EXPLICIT = 1 } og_scheme;

typedef struct og_model og_model;
typedef struct og_certificate og_certificate;
typedef struct og_trajectory og_trajectory;
typedef struct og_counterexample og_counterexample;
typedef struct og_pde_run og_pde_run;

OG_API const char* og_version(void);
OG_API const char* og_last_error(void);
OG_API const char* og_status_name(og_status status);
OG_API void og_string_free(char* s);

/* Models */

OG_API og_status og_model_load_file(const char* path, og_model** out);
OG_API og_status og_model_load_string(const char* document, og_model** out);
OG_API og_status og_model_from_zoo(const char* name, og_model** out);
OG_API og_status og_model_clone(const og_model* model, og_model** out);
OG_API void og_model_free(og_model* model);

OG_API size_t og_model_dimension(const og_model* model);
/* Returns NULL when i is out of range. The pointer lives as long as the model. */
OG_API const char* og_model_variable(const og_model* model, size_t i);
OG_API int og_model_is_time_dependent(const og_model* model);
OG_API int og_model_has_diffusion(const og_model* model);
OG_API int og_model_has_rectangle(const og_model* model);
/* alpha and beta receive n entries; beta may hold +INFINITY. */
OG_API og_status og_model_rectangle(const og_model* model, double* alpha, double* beta, size_t n);
/* OG_ERR_NOT_FOUND when the model has no [pde] table. */
OG_API og_status og_model_pde_settings(const og_model* model, og_bc* bc, double* length, size_t* cells);
OG_API og_status og_model_diffusion(const og_model* model, double* d, size_t n);
OG_API og_status og_model_eval(const og_model* model, double t, const double* state, size_t n, double* out);
OG_API og_status og_model_to_toml(const og_model* model, char** out);
OG_API og_status og_model_to_json(const og_model* model, char** out);

/* Zoo */

OG_API size_t og_zoo_count(void);
OG_API const char* og_zoo_name(size_t i);
OG_API og_status og_zoo_export(const char* name, char** out);
/* Catalogue with expected verdicts, rectangles and notes. */
OG_API og_status og_zoo_to_json(char** out);

/* Field analysis */

OG_API og_status og_estimate_lipschitz(const og_model* model, const double* lo, const double* hi, size_t n,
                                       size_t grid_per_axis, size_t random_samples, uint64_t seed, double t,
                                       double* out_m);
OG_API og_status og_existence_horizon(double sup_norm, double f0_norm, double lipschitz, double* out);

/* Condition checks */

typedef struct og_sampling {
  double clip;
  size_t grid_per_axis;
  size_t random_samples;
  uint64_t seed;
  size_t refine_iterations;
} og_sampling;

OG_API void og_sampling_default(og_sampling* sampling);

/* sampling may be NULL for defaults. */
OG_API og_status og_check_quasipositivity(const og_model* model, const og_sampling* sampling,
                                          og_certificate** out);
OG_API og_status og_check_rectangle(const og_model* model, const double* alpha, const double* beta, size_t n,
                                    const og_sampling* sampling, og_certificate** out);
OG_API og_status og_check_nonautonomous(const og_model* model, double t0, double t1, const og_sampling* sampling,
                                        og_certificate** out);
OG_API void og_certificate_free(og_certificate* certificate);

OG_API og_verdict og_certificate_verdict(const og_certificate* certificate);
OG_API int og_certificate_is_strict(const og_certificate* certificate);
OG_API int og_certificate_has_witness(const og_certificate* certificate);
/* point receives n entries; time is set to NAN for autonomous checks.
   OG_ERR_NOT_FOUND when the certificate carries no witness. */
OG_API og_status og_certificate_witness(const og_certificate* certificate, size_t* face_index, og_side* side,
                                        double* point, size_t n, double* value, double* time);
OG_API og_status og_certificate_to_json(const og_certificate* certificate, char** out);

/* ODE integration */

typedef struct og_ode_options {
  double rel_tol;
  double abs_tol;
  double time_offset;
} og_ode_options;

OG_API void og_ode_options_default(og_ode_options* options);

/* options may be NULL for defaults. */
OG_API og_status og_integrate(const og_model* model, const double* u0, size_t n, double t_end,
                              const og_ode_options* options, og_trajectory** out);
OG_API void og_trajectory_free(og_trajectory* trajectory);

OG_API og_run_status og_trajectory_status(const og_trajectory* trajectory, double* status_time);
OG_API size_t og_trajectory_length(const og_trajectory* trajectory);
OG_API og_status og_trajectory_sample(const og_trajectory* trajectory, size_t index, double* time, double* state,
                                      size_t n);
/* Returns 1 and fills component/time when a went_negative event occurred. */
OG_API int og_trajectory_first_negative(const og_trajectory* trajectory, size_t* component, double* time);
/* Smallest value of any component over all accepted steps. */
OG_API og_status og_trajectory_min(const og_trajectory* trajectory, double* out);
OG_API og_status og_trajectory_to_json(const og_trajectory* trajectory, char** out);
OG_API og_status og_trajectory_to_csv(const og_trajectory* trajectory, char** out);
OG_API og_status og_gronwall_check(const og_trajectory* trajectory, size_t component, double m_safe,
                                   double* min_residual, int* holds);
/* Lipschitz estimate on the padded bounding box of the trajectory, times the safety factor. */
OG_API og_status og_trajectory_safe_lipschitz(const og_trajectory* trajectory, uint64_t seed, double* out);

/* Counterexamples */

typedef struct og_counterexample_options {
  og_ode_options integration;
  int has_start_time;
  double start_time;
  int max_retries;
} og_counterexample_options;

OG_API void og_counterexample_options_default(og_counterexample_options* options);

/* OG_ERR_PRECONDITION unless the certificate is violated on a low face;
   OG_ERR_NOT_FOUND when every retry stays nonnegative. */
OG_API og_status og_find_counterexample(const og_model* model, const og_certificate* certificate, double a,
                                        double t_end, const og_counterexample_options* options,
                                        og_counterexample** out);
OG_API void og_counterexample_free(og_counterexample* counterexample);
OG_API og_status og_counterexample_u0(const og_counterexample* counterexample, double* u0, size_t n);
OG_API og_status og_counterexample_crossing(const og_counterexample* counterexample, size_t* component,
                                            double* time);
OG_API og_status og_counterexample_to_json(const og_counterexample* counterexample, char** out);

/* Reaction-diffusion */

typedef struct og_pde_options {
  og_bc bc;
  double length;
  size_t cells;
  og_scheme scheme;
  double dt;
  double t_end;
  size_t save_every;
} og_pde_options;

/* Defaults come from the model's [pde] table when present. */
OG_API void og_pde_options_default(const og_model* model, og_pde_options* options);

/* ic holds either one expression per species or a single expression applied
   to every species; each is parsed over the variable `x`. */
OG_API og_status og_pde_simulate(const og_model* model, const og_pde_options* options, const char* const* ic,
                                 size_t ic_count, og_pde_run** out);
/* values holds n * cells entries, row-major by species. */
OG_API og_status og_pde_simulate_values(const og_model* model, const og_pde_options* options, const double* values,
                                        size_t count, og_pde_run** out);
OG_API void og_pde_run_free(og_pde_run* run);

OG_API og_run_status og_pde_run_status(const og_pde_run* run, double* status_time);
OG_API og_status og_pde_run_global_min(const og_pde_run* run, double* out);
OG_API og_status og_pde_run_to_csv(const og_pde_run* run, char** out);
/* Step summary, positivity report, homogeneity diagnostics and, for
   Dirichlet runs, the eigenpair and decay report. */
OG_API og_status og_pde_run_to_json(const og_pde_run* run, size_t every, char** out);

OG_API og_status og_dirichlet_eigenpair(double length, size_t cells, double* lambda, double* phi);
OG_API og_status og_cfl_limit(const og_model* model, double length, size_t cells, og_bc bc, double* out);
OG_API og_status og_converse_functional(const og_model* model, size_t component, const double* face_point,
                                        size_t count, double length, size_t cells, double t_probe, double* out);

#ifdef __cplusplus
}
#endif

#endif
