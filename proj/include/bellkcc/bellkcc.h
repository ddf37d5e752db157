/*
 * bellkcc: Bell function values of two-qubit states and their use as a
 * probe of the topological transition in the Kitaev-Castelnovo-Chamon model.
 *
 * Every fallible call returns a bk_status; BK_OK means the out-parameters
 * were written. On failure bk_last_error() describes the problem (the
 * message is per thread and valid until the next failing call).
 *
 * Handles are opaque and owned by the caller; release each with its
 * matching *_free function. Strings returned through char** are released
 * with bk_string_free. Handles are immutable once created and may be read
 * from several threads at once.
 *
 * Two-qubit matrices cross the boundary as 32 doubles: row-major entries
 * in the basis |00>,|01>,|10>,|11>, each stored as (re, im).
 */
#ifndef BELLKCC_H
#define BELLKCC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BELLKCC_BUILD)
#    define BK_API __declspec(dllexport)
#  else
#    define BK_API __declspec(dllimport)
#  endif
#else
#  define BK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bk_status {
  BK_OK = 0,
  BK_ERR_INVALID_ARGUMENT = 1,
  BK_ERR_NON_HERMITIAN = 2,
  BK_ERR_TRACE_NOT_ONE = 3,
  BK_ERR_NOT_POSITIVE = 4,
  BK_ERR_UNNORMALIZED_SETTING = 5,
  BK_ERR_BUDGET_TOO_SMALL = 6,
  BK_ERR_MAX_DEPTH_EXCEEDED = 7,
  BK_ERR_NON_FINITE_SAMPLE = 8,
  BK_ERR_MODULUS_OUT_OF_RANGE = 9,
  BK_ERR_NON_POSITIVE_BETA = 10,
  BK_ERR_DIVERGENT_AT_CRITICAL = 11,
  BK_ERR_LATTICE_TOO_LARGE = 12,
  BK_ERR_INDEX_OUT_OF_RANGE = 13,
  BK_ERR_NO_INTERIOR_PEAK = 14,
  BK_ERR_PARSE = 15,
  BK_ERR_IO = 16,
  BK_ERR_INTERNAL = 99
} bk_status;

BK_API const char* bk_status_name(bk_status status);
BK_API const char* bk_last_error(void);
BK_API const char* bk_version(void);
BK_API void bk_string_free(char* s);

/* ---- two-qubit states ------------------------------------------------ */

typedef struct bk_state bk_state;

typedef struct bk_validation {
  double hermitian_residual; /* max |rho - rho^dagger| */
  double trace_residual;     /* |Tr rho - 1| */
  double min_eigenvalue;
  int non_hermitian;         /* residual above 1e-12 */
  int trace_not_one;         /* residual above 1e-12 */
  int not_positive;          /* eigenvalue below -1e-10 */
} bk_validation;

/* Fills `out` for any finite matrix; returns BK_OK even when invariants fail. */
BK_API bk_status bk_validate(const double entries[32], bk_validation* out);
BK_API bk_status bk_state_create(const double entries[32], bk_state** out);
/* StateFile text: {"matrix": [[[re, im], ...4], ...4]} */
BK_API bk_status bk_state_from_json(const char* text, bk_state** out);
BK_API bk_status bk_state_load(const char* path, bk_state** out);
BK_API bk_status bk_state_random(uint64_t seed, bk_state** out);
BK_API bk_status bk_state_entries(const bk_state* state, double out[32]);
BK_API bk_status bk_state_to_json(const bk_state* state, char** out);
BK_API void bk_state_free(bk_state* state);

/* (L)_{st} = Tr[rho sigma_s (x) sigma_t], row-major, s over qubit 1. */
BK_API bk_status bk_correlation_matrix(const bk_state* state, double out[9]);

/* ---- CHSH ------------------------------------------------------------ */

typedef struct bk_settings {
  double a1[3], a2[3]; /* observer on qubit 1 */
  double b1[3], b2[3]; /* observer on qubit 2 */
} bk_settings;

typedef struct bk_bfv {
  double value;
  double upsilon1, upsilon2; /* two largest eigenvalues of L^T L */
  int has_settings;
  bk_settings settings;
} bk_bfv;

typedef struct bk_optimizer_config {
  int restarts;
  int grid_points;
  double simplex_tolerance;
  int max_evaluations;
  uint64_t seed;
} bk_optimizer_config;

BK_API void bk_optimizer_config_default(bk_optimizer_config* config);
BK_API bk_status bk_chsh_value(const bk_state* state, const bk_settings* settings, double* out);
BK_API bk_status bk_horodecki_bfv(const bk_state* state, bk_bfv* out);
BK_API bk_status bk_maximize_chsh(const bk_state* state, const bk_optimizer_config* config, bk_bfv* out);
BK_API bk_status bk_optimal_settings(const bk_state* state, bk_settings* out);

/* ---- quadrature ------------------------------------------------------ */

typedef double (*bk_integrand)(double x, void* user);

typedef struct bk_quadrature_result {
  double value;
  double error_estimate;
  int subdivisions;
} bk_quadrature_result;

/* On BK_ERR_MAX_DEPTH_EXCEEDED `out` still receives the best estimate. */
BK_API bk_status bk_integrate(bk_integrand f, void* user, double lo, double hi, double rel_tol,
                              bk_quadrature_result* out);
BK_API bk_status bk_elliptic_x(double chi, double* out);

/* ---- KCC model (thermodynamic limit) --------------------------------- */

typedef enum bk_pair_kind { BK_PAIR_NEAREST = 0, BK_PAIR_NEXT_TO_NEAREST = 1 } bk_pair_kind;

typedef struct bk_dual_params {
  double beta, chi, beta_star, gamma, xi;
} bk_dual_params;

/* Signed values as the closed formulas give them. */
typedef struct bk_kcc_point {
  double beta, m, c_nn, c_nnn;
} bk_kcc_point;

BK_API double bk_critical_beta(void);
BK_API bk_status bk_kcc_dual_params(double beta, bk_dual_params* out);
BK_API bk_status bk_magnetization(double beta, double* out);
BK_API bk_status bk_corr_nearest(double beta, double* out);
BK_API bk_status bk_t_kappa(double beta, int kappa, double* out);
BK_API bk_status bk_corr_next_nearest(double beta, double* out);
BK_API bk_status bk_correlators(double beta, bk_kcc_point* out);
BK_API bk_status bk_reduced_density(double beta, bk_pair_kind kind, bk_state** out);
BK_API bk_status bk_kcc_bfv(double beta, bk_pair_kind kind, double* out);
/* BK_ERR_DIVERGENT_AT_CRITICAL within 1e-7 of beta_c. */
BK_API bk_status bk_dbfv_dbeta_analytic(double beta, double* out);
BK_API bk_status bk_pure_state_bfv(double beta, double* out);

/* ---- sweeps ---------------------------------------------------------- */

typedef enum bk_method { BK_METHOD_FINITE_DIFFERENCE = 0, BK_METHOD_ANALYTIC = 1 } bk_method;

typedef struct bk_sweep_config {
  double beta_min, beta_max;
  int steps; /* grid has steps + 1 points */
  double delta_beta;
  bk_pair_kind kind;
  bk_method method;
  int threads;
} bk_sweep_config;

typedef struct bk_critical_estimate {
  double beta_hat;
  double peak_value;
  double delta_beta;
  bk_method method;
} bk_critical_estimate;

typedef struct bk_series bk_series;

BK_API void bk_sweep_config_default(bk_sweep_config* config);
BK_API bk_status bk_bfv_curve(const bk_sweep_config* config, bk_series** out);
BK_API size_t bk_series_size(const bk_series* series);
BK_API bk_status bk_series_point(const bk_series* series, size_t index, double* beta, double* bfv, double* dbfv,
                                 int* divergent);
BK_API bk_status bk_series_csv(const bk_series* series, char** out);
BK_API bk_status bk_series_json(const bk_series* series, char** out);
BK_API bk_status bk_series_svg(const bk_series* series, char** out);
BK_API bk_status bk_series_estimate_critical(const bk_series* series, bk_critical_estimate* out);
BK_API void bk_series_free(bk_series* series);

BK_API bk_status bk_estimate_critical(const bk_sweep_config* config, bk_critical_estimate* out);
/* `out` must hold n entries; deltas strictly decreasing. */
BK_API bk_status bk_convergence_study(const bk_sweep_config* base, const double* deltas, size_t n,
                                      bk_critical_estimate* out);

/* ---- exact oracles --------------------------------------------------- */

typedef struct bk_ground_state bk_ground_state;
typedef struct bk_comparison bk_comparison;

/* sites_xy holds n_sites (x, y) pairs. */
BK_API bk_status bk_ising_expectation(int side, double beta, const int* sites_xy, size_t n_sites, int threads,
                                      double* out);
BK_API bk_status bk_ising_displacement(int side, double beta, int dx, int dy, int threads, double* out);

BK_API bk_status bk_kcc_edge_index(int side, int x, int y, int vertical, int* out);
BK_API bk_status bk_kcc_ground_state(int side, double beta, bk_ground_state** out);
BK_API size_t bk_ground_state_size(const bk_ground_state* state);
BK_API bk_status bk_ground_state_amplitudes(const bk_ground_state* state, double* out, size_t n);
BK_API bk_status bk_ground_state_reduce_pair(const bk_ground_state* state, int i, int j, bk_state** out);
BK_API void bk_ground_state_free(bk_ground_state* state);

/* Observables in report order: 0 d10, 1 d11, 2 d20, 3 d21, 4 plaquette.
 * Formulas: 0 magnetization, 1 corr_nearest, 2 corr_next_nearest. */
BK_API const char* bk_observable_name(int observable);
BK_API bk_status bk_compare_formulas(double beta, const int* sides, size_t n_sides, int threads,
                                     bk_comparison** out);
BK_API size_t bk_comparison_rows(const bk_comparison* report);
BK_API bk_status bk_comparison_row(const bk_comparison* report, size_t row, int* side, double enumerated[5]);
BK_API bk_status bk_comparison_match(const bk_comparison* report, int formula, size_t row, double* value,
                                     int* best_observable, double* deviation);
BK_API bk_status bk_comparison_csv(const bk_comparison* report, char** out);
BK_API void bk_comparison_free(bk_comparison* report);

BK_API bk_status bk_write_text_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif /* BELLKCC_H */
