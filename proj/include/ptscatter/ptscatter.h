/*
 * ptscatter C interface.
 *
 * Scattering from one-dimensional complex (optical / PT-symmetric) barriers:
 * closed forms for the rectangular and Scarf barriers, an RK4 engine for any
 * of the built-in models, energy sweeps, anomaly classification and the
 * critical-coupling search.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a ptscat_status;
 * on failure ptscat_last_error() describes it (per thread) and
 * ptscat_last_error_energy() names the offending energy when there is one.
 * Option pointers may be NULL to request defaults.
 */
#ifndef PTSCATTER_H
#define PTSCATTER_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PTSCATTER_BUILDING)
#    define PTSCAT_API __declspec(dllexport)
#  else
#    define PTSCAT_API __declspec(dllimport)
#  endif
#else
#  define PTSCAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptscat_status {
  PTSCAT_OK = 0,
  PTSCAT_INVALID_ARGUMENT = 1,
  PTSCAT_BACKEND_MISMATCH = 2,
  PTSCAT_NUMERIC_FAILURE = 3,
  PTSCAT_DEGENERATE_ENERGY = 4,
  PTSCAT_STEP_TOO_LARGE = 5,
  PTSCAT_OVERFLOW = 6,
  PTSCAT_NO_CROSSING = 7,
  PTSCAT_IO_ERROR = 8,
  PTSCAT_INTERNAL_ERROR = 99
} ptscat_status;

typedef enum ptscat_model {
  PTSCAT_MODEL_RECT = 0,
  PTSCAT_MODEL_SCARF = 1,
  PTSCAT_MODEL_RATIONAL_ODD = 2,
  PTSCAT_MODEL_EXP_LINEAR = 3
} ptscat_model;

typedef enum ptscat_side { PTSCAT_SIDE_LEFT = 0, PTSCAT_SIDE_RIGHT = 1 } ptscat_side;

typedef enum ptscat_backend {
  PTSCAT_BACKEND_AUTO = -1, /* analytic when a closed form exists (critical search only) */
  PTSCAT_BACKEND_ANALYTIC = 0,
  PTSCAT_BACKEND_NUMERIC = 1
} ptscat_backend;

typedef enum ptscat_handedness {
  PTSCAT_HANDEDNESS_NONE = 0,
  PTSCAT_HANDEDNESS_LEFT_ABSORPTIVE = 1,
  PTSCAT_HANDEDNESS_RIGHT_ABSORPTIVE = 2
} ptscat_handedness;

typedef enum ptscat_column {
  PTSCAT_COLUMN_T = 0,
  PTSCAT_COLUMN_R_L = 1,
  PTSCAT_COLUMN_R_R = 2,
  PTSCAT_COLUMN_A_L = 3,
  PTSCAT_COLUMN_A_R = 4
} ptscat_column;

typedef struct ptscat_potential_params {
  ptscat_model model;
  double v1;
  double v2;    /* >= 0; the smooth models absorb on the left */
  double a;     /* width scale, > 0 */
  int s1, s2;   /* rect only: signs of Im V on (-a,0) and (0,a) */
  double two_m; /* 2m */
  double hbar;
} ptscat_potential_params;

typedef struct ptscat_numeric_options {
  double step;           /* 0 selects 1e-3 * a */
  double truncation_tol; /* domain cut where |V| < tol * max(|V1|,|V2|) */
  long max_steps;
  int verify_step;       /* nonzero: step-doubling error check on every solve */
  double verify_tol;
} ptscat_numeric_options;

typedef struct ptscat_coefficients {
  double E, T, R_l, R_r, A_l, A_r;
} ptscat_coefficients;

typedef struct ptscat_interval {
  double lo, hi;
} ptscat_interval;

typedef struct ptscat_handedness_summary {
  double min_gap; /* min of R_r - R_l over the grid */
  double max_gap;
  int monotone;   /* R_l < R_r at every grid point */
} ptscat_handedness_summary;

typedef struct ptscat_critical_params {
  ptscat_model model;
  double v1;
  double a;
  double two_m;
  double hbar;
  double v2_low, v2_high; /* both 0: [0, V1 + delta] */
  double tol;
  double eps;
  const double* grid; /* NULL: 200 points on [0.2 V1, 3 V1] */
  size_t grid_size;
  ptscat_backend backend;
} ptscat_critical_params;

typedef struct ptscat_critical_result {
  double v2_critical;
  double bracket_low, bracket_high;
  int predicate_evals;
} ptscat_critical_result;

typedef struct ptscat_comparison {
  double max_rel_T, worst_E_T;
  double max_rel_R_l, worst_E_R_l;
  double max_rel_R_r, worst_E_R_r;
} ptscat_comparison;

typedef struct ptscat_potential ptscat_potential;
typedef struct ptscat_sweep ptscat_sweep;
typedef struct ptscat_report ptscat_report;

PTSCAT_API const char* ptscat_version(void);
PTSCAT_API const char* ptscat_last_error(void);
PTSCAT_API double ptscat_last_error_energy(void); /* NaN when not tied to an energy */
PTSCAT_API const char* ptscat_status_name(ptscat_status status);

PTSCAT_API void ptscat_potential_params_init(ptscat_potential_params* params);
PTSCAT_API void ptscat_numeric_options_init(ptscat_numeric_options* opts);
PTSCAT_API void ptscat_critical_params_init(ptscat_critical_params* params);

PTSCAT_API ptscat_status ptscat_model_from_name(const char* name, ptscat_model* out);
PTSCAT_API const char* ptscat_model_name(ptscat_model model);
PTSCAT_API ptscat_status ptscat_backend_from_name(const char* name, ptscat_backend* out);
PTSCAT_API const char* ptscat_backend_name(ptscat_backend backend);
PTSCAT_API const char* ptscat_handedness_name(ptscat_handedness handedness);
PTSCAT_API const char* ptscat_column_name(ptscat_column column);

/* Potentials */
PTSCAT_API ptscat_status ptscat_potential_create(const ptscat_potential_params* params, ptscat_potential** out);
PTSCAT_API void ptscat_potential_destroy(ptscat_potential* pot);
PTSCAT_API ptscat_status ptscat_potential_evaluate(const ptscat_potential* pot, double x, double* re, double* im);
PTSCAT_API ptscat_status ptscat_potential_support_radius(const ptscat_potential* pot, double tol, double* out);
PTSCAT_API ptscat_status ptscat_potential_is_pt_symmetric(const ptscat_potential* pot, int n_samples, int* out);

/* Single energies */
PTSCAT_API ptscat_status ptscat_coefficients_compute(const ptscat_potential* pot, double E, ptscat_backend backend,
                                                     const ptscat_numeric_options* opts, ptscat_coefficients* out);
/* Absorption from the wavefunction integral of Im V |psi|^2 (numeric engine). */
PTSCAT_API ptscat_status ptscat_absorption_integral(const ptscat_potential* pot, double E, ptscat_side side,
                                                    const ptscat_numeric_options* opts, double* out);

/* Sweeps */
PTSCAT_API ptscat_status ptscat_sweep_run(const ptscat_potential* pot, const double* grid, size_t n,
                                          ptscat_backend backend, const ptscat_numeric_options* opts,
                                          ptscat_sweep** out);
PTSCAT_API void ptscat_sweep_destroy(ptscat_sweep* sweep);
PTSCAT_API size_t ptscat_sweep_size(const ptscat_sweep* sweep);
PTSCAT_API ptscat_status ptscat_sweep_row(const ptscat_sweep* sweep, size_t i, ptscat_coefficients* out);
PTSCAT_API double ptscat_sweep_reciprocity_residual(const ptscat_sweep* sweep);
PTSCAT_API ptscat_status ptscat_sweep_handedness(const ptscat_sweep* sweep, ptscat_handedness_summary* out);
PTSCAT_API ptscat_status ptscat_sweep_write_csv(const ptscat_sweep* sweep, const char* path);
/* config_json: effective run configuration echoed under "config"; may be NULL. */
PTSCAT_API ptscat_status ptscat_sweep_write_json(const ptscat_sweep* sweep, const ptscat_report* report,
                                                 const char* config_json, const char* path);

/* Anomaly reports */
PTSCAT_API ptscat_status ptscat_report_create(const ptscat_sweep* sweep, double eps, const ptscat_numeric_options* opts,
                                              ptscat_report** out);
PTSCAT_API void ptscat_report_destroy(ptscat_report* report);
PTSCAT_API ptscat_handedness ptscat_report_handedness(const ptscat_report* report);
PTSCAT_API int ptscat_report_physical_left(const ptscat_report* report);
PTSCAT_API int ptscat_report_physical_right(const ptscat_report* report);
PTSCAT_API size_t ptscat_report_interval_count(const ptscat_report* report, ptscat_column column);
PTSCAT_API ptscat_status ptscat_report_interval(const ptscat_report* report, ptscat_column column, size_t i,
                                                ptscat_interval* out);

/* Critical coupling and cross-checks */
PTSCAT_API ptscat_status ptscat_find_critical_v2(const ptscat_critical_params* params,
                                                 const ptscat_numeric_options* opts, ptscat_critical_result* out);
PTSCAT_API ptscat_status ptscat_compare_backends(const ptscat_potential* pot, const double* grid, size_t n,
                                                 const ptscat_numeric_options* opts, ptscat_comparison* out);

PTSCAT_API ptscat_status ptscat_write_plot_script(const char* csv_path, const char* title, const char* script_path);

#ifdef __cplusplus
}
#endif

#endif /* PTSCATTER_H */
