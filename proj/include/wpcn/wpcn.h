/* Copyright 2026 The wpcn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the wpcn solver library.
 *
 * Every function returns a wpcn_rc error code; results come back through
 * out-pointers. Solutions are opaque handles owned by the caller and
 * released with wpcn_solution_free. All calls are thread-safe: the library
 * keeps no global state.
 */

#ifndef WPCN_WPCN_H
#define WPCN_WPCN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wpcn_rc {
  WPCN_OK = 0,
  WPCN_ERR_NULL_ARGUMENT = 1,
  WPCN_ERR_INVALID_ARGUMENT = 2, /* parameter/config invariant violated */
  WPCN_ERR_DOMAIN = 3,           /* evaluation outside a function's domain */
  WPCN_ERR_OUT_OF_RANGE = 4,     /* index past the end of a trace */
  WPCN_ERR_INTERNAL = 5
} wpcn_rc;

typedef enum wpcn_variant {
  WPCN_VARIANT_BOX_TAU_MAX = 0,
  WPCN_VARIANT_EXACT_HARVEST_CAP = 1
} wpcn_variant;

typedef enum wpcn_feasibility {
  WPCN_FEASIBLE = 0,
  WPCN_VIOLATES_P1 = 1,
  WPCN_VIOLATES_P2 = 2,
  WPCN_VIOLATES_TAU = 3,
  WPCN_VIOLATES_QOS = 4
} wpcn_feasibility;

typedef enum wpcn_solve_status {
  WPCN_SOLVE_OPTIMAL = 0,
  WPCN_SOLVE_INFEASIBLE = 1,
  WPCN_SOLVE_MAX_ITERATIONS = 2
} wpcn_solve_status;

typedef struct wpcn_system_params {
  double bandwidth_hz;
  double slot_s;
  double eta;
  double alpha;
  double theta;
  double noise_power_w;
  uint32_t n_t;
  double p0_w;
  double p1_max_w;
  double p2_max_w;
  double r_min_bps;
} wpcn_system_params;

typedef struct wpcn_solver_config {
  double epsilon_bits;
  double step_mu;
  double step_vartheta;
  double step_nu;
  double step_upsilon;
  uint32_t max_outer;
  uint32_t max_dual_iters;
  double bisection_tol_s;
  double init_fraction;
  int paper_eq18_literal;
} wpcn_solver_config;

typedef struct wpcn_grid_spec {
  uint32_t n_p;
  uint32_t n_tau;
  uint32_t refine_levels;
  double refine_factor;
} wpcn_grid_spec;

/* Opaque solver/oracle result. */
typedef struct wpcn_solution_impl wpcn_solution;

const char* wpcn_version(void);

/* Human-readable message for a wpcn_rc value. */
const char* wpcn_rc_message(int rc);

/* Fills the bundled reference scenario. */
wpcn_rc wpcn_system_params_reference(wpcn_system_params* out);

/* Default solver configuration for the given parameter scale. */
wpcn_rc wpcn_solver_config_defaults(const wpcn_system_params* params,
                                    wpcn_solver_config* out);

wpcn_rc wpcn_grid_spec_defaults(wpcn_grid_spec* out);

/* Checks parameter invariants (positivity, eta <= 1, n_t >= 1, ...). */
wpcn_rc wpcn_system_params_validate(const wpcn_system_params* params);

/* Closed-form model evaluations. */
wpcn_rc wpcn_tau_max(const wpcn_system_params* params, double* out_s);
wpcn_rc wpcn_p2_cap(const wpcn_system_params* params, double tau_s,
                    double* out_w);
wpcn_rc wpcn_avg_rate_hardened(const wpcn_system_params* params, double p_w,
                               double tau_s, double* out_bps);
wpcn_rc wpcn_avg_rate_exact(const wpcn_system_params* params, double p_w,
                            double tau_s, double h_norm2, double g_norm2,
                            double* out_bps);
wpcn_rc wpcn_energy_efficiency(const wpcn_system_params* params, double p_w,
                               double tau_s, double* out_bits_per_joule);
wpcn_rc wpcn_harvested_energy(const wpcn_system_params* params, double p_w,
                              double tau_s, double* out_joules);
wpcn_rc wpcn_check_feasible(const wpcn_system_params* params, double p_w,
                            double tau_s, int variant, int* out_feasibility);
wpcn_rc wpcn_max_achievable_rate(const wpcn_system_params* params, int variant,
                                 double* out_bps);

/* Optimization entry points. On success *out owns a new solution handle. */
wpcn_rc wpcn_solve_joint(const wpcn_system_params* params,
                         const wpcn_solver_config* cfg, wpcn_solution** out);
wpcn_rc wpcn_solve_duration_only(const wpcn_system_params* params,
                                 const wpcn_solver_config* cfg,
                                 wpcn_solution** out);
wpcn_rc wpcn_grid_search(const wpcn_system_params* params, int variant,
                         const wpcn_grid_spec* grid, wpcn_solution** out);

void wpcn_solution_free(wpcn_solution* sol);
wpcn_rc wpcn_solution_status(const wpcn_solution* sol, int* out_status);
wpcn_rc wpcn_solution_allocation(const wpcn_solution* sol, double* out_p_w,
                                 double* out_tau_s);
wpcn_rc wpcn_solution_ee(const wpcn_solution* sol, double* out_bits_per_joule);
wpcn_rc wpcn_solution_rate(const wpcn_solution* sol, double* out_bps);
wpcn_rc wpcn_solution_outer_iterations(const wpcn_solution* sol,
                                       uint32_t* out_iterations);
wpcn_rc wpcn_solution_trace_size(const wpcn_solution* sol, size_t* out_size);
wpcn_rc wpcn_solution_trace_entry(const wpcn_solution* sol, size_t index,
                                  double* out_q, double* out_f);

/* Monte Carlo channel statistics; deterministic for a fixed seed. */
wpcn_rc wpcn_hardening_stats(uint32_t n_t, uint32_t m, uint64_t seed,
                             double* out_mean_ratio, double* out_std_ratio);
wpcn_rc wpcn_rate_gap_stats(const wpcn_system_params* params, double p_w,
                            double tau_s, uint32_t m, uint64_t seed,
                            double* out_mean_rel_gap, double* out_max_rel_gap,
                            uint32_t* out_excluded);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WPCN_WPCN_H */
