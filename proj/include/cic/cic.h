/*
   Copyright 2026 The cic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * C interface to the cic toolkit: PLR analytics for cache-aided receiver
 * interference cancellation, the Monte Carlo validator, and the caching
 * scheme optimizer.
 *
 * Every function returns a cic_status; on failure cic_last_error() holds a
 * message for the calling thread until its next failing call. Objects
 * created by cic_*_create / cic_optimize are owned by the caller and must be
 * released with the matching cic_*_free. Packet indices are 0-based and
 * refer to the library in descending popularity order.
 */

#ifndef CIC_CIC_H_
#define CIC_CIC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CIC_BUILDING_LIBRARY)
#    define CIC_API __declspec(dllexport)
#  else
#    define CIC_API __declspec(dllimport)
#  endif
#else
#  define CIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cic_status {
  CIC_OK = 0,
  CIC_ERR_INVALID_ARGUMENT = 1,
  CIC_ERR_NUMERICAL = 2,
  CIC_ERR_DIVERGENCE = 3,
  CIC_ERR_INFEASIBLE = 4,
  CIC_ERR_IO = 5,
  CIC_ERR_INTERNAL = 6
} cic_status;

typedef enum cic_regime {
  CIC_REGIME_GENERAL = 0,     /* partial CSI within r_b_m, noise as given */
  CIC_REGIME_NO_CSI = 1,      /* r_b -> 0 */
  CIC_REGIME_FULL_CANCEL = 2  /* r_b -> inf, noise -> 0 */
} cic_regime;

typedef enum cic_lp_status {
  CIC_LP_OPTIMAL = 0,
  CIC_LP_INFEASIBLE = 1,
  CIC_LP_NUMERICAL_FAILURE = 2
} cic_lp_status;

/* Units: nodes/m^2, watts, MHz, seconds, Mb, meters. r_b_m may be INFINITY. */
typedef struct cic_network_params {
  double lambda_b;
  double lambda_u;
  double tx_power_w;
  double noise_power_w;
  double beta;
  double bandwidth_mhz;
  double slot_s;
  double packet_size_mb;
  double r_b_m;
} cic_network_params;

typedef struct cic_plr_estimate {
  double mean;
  double std_error;
  uint64_t trials;
  uint64_t losses;
  uint64_t rejections;
} cic_plr_estimate;

typedef struct cic_mc_config {
  cic_network_params params;
  double eta;
  double window_radius_m; /* 0 selects the default window */
  uint64_t trials;
  uint64_t seed;
  unsigned workers; /* 0 selects hardware concurrency */
} cic_mc_config;

typedef struct cic_optimize_options {
  int column_generation; /* nonzero: price columns instead of enumerating */
  uint64_t subset_cap;   /* 0 selects the default cap (200000) */
} cic_optimize_options;

typedef struct cic_solver_diagnostics {
  uint64_t iterations;
  uint64_t phase1_iterations;
  uint64_t refactorizations;
  uint64_t basis_size;
  uint64_t columns;
  uint64_t pricing_rounds;
  double max_residual;
} cic_solver_diagnostics;

typedef struct cic_library cic_library;
typedef struct cic_scheme cic_scheme;
typedef struct cic_optimization cic_optimization;

/* -- errors and metadata ------------------------------------------------ */
CIC_API const char* cic_version(void);
CIC_API const char* cic_last_error(void);
CIC_API const char* cic_status_string(cic_status status);
/* Releases strings returned by cic_optimization_to_json. */
CIC_API void cic_string_free(char* str);

/* -- network parameters -------------------------------------------------- */
CIC_API cic_status cic_reference_network(cic_network_params* out);
CIC_API cic_status cic_network_validate(const cic_network_params* params);
CIC_API cic_status cic_dbm_to_watts(double dbm, double* out);
CIC_API cic_status cic_sinr_threshold(const cic_network_params* params, double* out);

/* -- packet library ------------------------------------------------------ */
CIC_API cic_status cic_library_zipf(size_t n, double gamma, cic_library** out);
CIC_API cic_status cic_library_from_probs(const double* probs, size_t n, cic_library** out);
CIC_API size_t cic_library_size(const cic_library* lib);
CIC_API cic_status cic_library_probs(const cic_library* lib, double* out, size_t capacity);
CIC_API void cic_library_free(cic_library* lib);

/* -- caching scheme -------------------------------------------------------
 * `packets` holds rows*cache_size 0-based indices, row-major. Rows are
 * re-ordered canonically (density descending) on creation. */
CIC_API cic_status cic_scheme_create(size_t n_packets, size_t cache_size, size_t rows,
                                     const double* densities, const uint32_t* packets,
                                     cic_scheme** out);
CIC_API size_t cic_scheme_rows(const cic_scheme* scheme);
CIC_API size_t cic_scheme_cache_size(const cic_scheme* scheme);
CIC_API size_t cic_scheme_packets(const cic_scheme* scheme);
CIC_API cic_status cic_scheme_row(const cic_scheme* scheme, size_t row, double* density,
                                  uint32_t* packets);
CIC_API void cic_scheme_free(cic_scheme* scheme);

/* alpha_out has n_packets entries, eta_out one per scheme row; either may be
 * NULL. *no_traffic is set to 1 when every request is served from cache. */
CIC_API cic_status cic_derived_load(const cic_library* lib, const cic_scheme* scheme,
                                    double* alpha_out, double* eta_out, int* no_traffic);

/* -- analytics ----------------------------------------------------------- */
CIC_API cic_status cic_hyp2f1(double a, double b, double c, double x, double* out);
CIC_API cic_status cic_z1(double beta, double t_bar, double* out);
CIC_API cic_status cic_interference_exponent_tail(double beta, double t_bar, double r,
                                                  double exclusion, double* out);
CIC_API cic_status cic_plr_partial_csi(const cic_network_params* params, double eta,
                                       double* out);
CIC_API cic_status cic_plr_uncached(const cic_network_params* params, double eta, double* out);
CIC_API cic_status cic_plr_no_csi(const cic_network_params* params, int interference_limited,
                                  double* out);
CIC_API cic_status cic_plr_full_cancellation(double eta, double t_bar, double beta,
                                             double* out);
CIC_API cic_status cic_plr_pair(const cic_network_params* params, const cic_library* lib,
                                const cic_scheme* scheme, size_t subset, size_t packet,
                                cic_regime regime, double* out);
CIC_API cic_status cic_average_plr(const cic_network_params* params, const cic_library* lib,
                                   const cic_scheme* scheme, cic_regime regime, double* out);
CIC_API cic_status cic_plr_uniform(size_t n, size_t m, double t_bar, double beta, double* out);
CIC_API cic_status cic_plr_gain(const cic_network_params* params, double eta, double* out);

/* -- Monte Carlo --------------------------------------------------------- */
CIC_API cic_status cic_mc_default_window(double lambda_b, double* out);
CIC_API cic_status cic_mc_estimate(const cic_mc_config* config, cic_plr_estimate* out);
/* out has n_rb*n_eta entries, r_b-major. Uses common random numbers. */
CIC_API cic_status cic_mc_sweep(const cic_mc_config* config, const double* r_b, size_t n_rb,
                                const double* eta, size_t n_eta, cic_plr_estimate* out);
CIC_API cic_status cic_mc_average_plr(const cic_network_params* params, const cic_library* lib,
                                      const cic_scheme* scheme, uint64_t trials, uint64_t seed,
                                      double window_radius_m, unsigned workers,
                                      cic_plr_estimate* out);
CIC_API cic_status cic_mc_serving_distances(const cic_mc_config* config, double* out,
                                            size_t count);
CIC_API uint64_t cic_split_seed(uint64_t seed, const char* label);

/* -- optimizer ----------------------------------------------------------- */
CIC_API cic_status cic_optimize(const cic_library* lib, size_t cache_size, double t_bar,
                                double beta, const cic_optimize_options* options,
                                cic_optimization** out);
CIC_API cic_lp_status cic_optimization_status(const cic_optimization* opt);
CIC_API double cic_optimization_objective(const cic_optimization* opt);
CIC_API size_t cic_optimization_support(const cic_optimization* opt);
CIC_API cic_status cic_optimization_row(const cic_optimization* opt, size_t row,
                                        double* density, uint32_t* packets);
CIC_API cic_status cic_optimization_diagnostics(const cic_optimization* opt,
                                                cic_solver_diagnostics* out);
CIC_API size_t cic_optimization_popular_unpopular_rows(const cic_optimization* opt);
/* Copies the optimal rows into a new scheme; fails unless status is optimal. */
CIC_API cic_status cic_optimization_scheme(const cic_optimization* opt, cic_scheme** out);
/* JSON document: rows (1-based packets + density), objective, status,
 * diagnostics. Release with cic_string_free. */
CIC_API cic_status cic_optimization_to_json(const cic_optimization* opt, char** out);
CIC_API void cic_optimization_free(cic_optimization* opt);
CIC_API cic_status cic_uniform_density_objective(const cic_library* lib, size_t cache_size,
                                                 double t_bar, double beta, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CIC_CIC_H_ */
