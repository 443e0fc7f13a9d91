// Copyright 2026 The wpcn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wpcn/wpcn.h"

#include <memory>
#include <new>
#include <stdexcept>

#include "wpcn/channel.hpp"
#include "wpcn/model.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/solver.hpp"

struct wpcn_solution_impl {
  wpcn::Solution solution;
};

namespace {

wpcn::SystemParams to_cpp(const wpcn_system_params& p) {
  wpcn::SystemParams out;
  out.bandwidth_hz = p.bandwidth_hz;
  out.slot_s = p.slot_s;
  out.eta = p.eta;
  out.alpha = p.alpha;
  out.theta = p.theta;
  out.noise_power_w = p.noise_power_w;
  out.n_t = p.n_t;
  out.p_static_w = p.p0_w;
  out.p1_max_w = p.p1_max_w;
  out.p2_max_w = p.p2_max_w;
  out.r_min_bps = p.r_min_bps;
  return out;
}

wpcn::SolverConfig to_cpp(const wpcn_solver_config& c) {
  wpcn::SolverConfig out;
  out.epsilon_bits = c.epsilon_bits;
  out.step_mu = c.step_mu;
  out.step_vartheta = c.step_vartheta;
  out.step_nu = c.step_nu;
  out.step_upsilon = c.step_upsilon;
  out.max_outer = c.max_outer;
  out.max_dual_iters = c.max_dual_iters;
  out.bisection_tol_s = c.bisection_tol_s;
  out.init_fraction = c.init_fraction;
  out.paper_eq18_literal = c.paper_eq18_literal != 0;
  return out;
}

wpcn::ConstraintVariant to_variant(int v) {
  switch (v) {
    case WPCN_VARIANT_BOX_TAU_MAX:
      return wpcn::ConstraintVariant::box_tau_max;
    case WPCN_VARIANT_EXACT_HARVEST_CAP:
      return wpcn::ConstraintVariant::exact_harvest_cap;
    default:
      throw std::invalid_argument("unknown constraint variant");
  }
}

// Runs the body and maps exceptions onto error codes.
template <typename F>
wpcn_rc guarded(F&& body) {
  try {
    body();
    return WPCN_OK;
  } catch (const std::domain_error&) {
    return WPCN_ERR_DOMAIN;
  } catch (const std::invalid_argument&) {
    return WPCN_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    return WPCN_ERR_INTERNAL;
  } catch (...) {
    return WPCN_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* wpcn_version(void) { return "0.1.0"; }

const char* wpcn_rc_message(int rc) {
  switch (rc) {
    case WPCN_OK:
      return "ok";
    case WPCN_ERR_NULL_ARGUMENT:
      return "null argument";
    case WPCN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case WPCN_ERR_DOMAIN:
      return "argument outside function domain";
    case WPCN_ERR_OUT_OF_RANGE:
      return "index out of range";
    case WPCN_ERR_INTERNAL:
      return "internal error";
    default:
      return "unknown error code";
  }
}

wpcn_rc wpcn_system_params_reference(wpcn_system_params* out) {
  if (!out) return WPCN_ERR_NULL_ARGUMENT;
  const wpcn::SystemParams p = wpcn::reference_params();
  *out = wpcn_system_params{p.bandwidth_hz, p.slot_s,     p.eta,
                            p.alpha,        p.theta,      p.noise_power_w,
                            p.n_t,          p.p_static_w, p.p1_max_w,
                            p.p2_max_w,     p.r_min_bps};
  return WPCN_OK;
}

wpcn_rc wpcn_solver_config_defaults(const wpcn_system_params* params,
                                    wpcn_solver_config* out) {
  if (!params || !out) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    const wpcn::SolverConfig c = wpcn::SolverConfig::defaults(p);
    *out = wpcn_solver_config{c.epsilon_bits,
                              c.step_mu,
                              c.step_vartheta,
                              c.step_nu,
                              c.step_upsilon,
                              c.max_outer,
                              c.max_dual_iters,
                              c.bisection_tol_s,
                              c.init_fraction,
                              c.paper_eq18_literal ? 1 : 0};
  });
}

wpcn_rc wpcn_grid_spec_defaults(wpcn_grid_spec* out) {
  if (!out) return WPCN_ERR_NULL_ARGUMENT;
  const wpcn::GridSpec g;
  *out = wpcn_grid_spec{g.n_p, g.n_tau, g.refine_levels, g.refine_factor};
  return WPCN_OK;
}

wpcn_rc wpcn_system_params_validate(const wpcn_system_params* params) {
  if (!params) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] { wpcn::validate(to_cpp(*params)); });
}

wpcn_rc wpcn_tau_max(const wpcn_system_params* params, double* out_s) {
  if (!params || !out_s) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_s = wpcn::tau_max(p);
  });
}

wpcn_rc wpcn_p2_cap(const wpcn_system_params* params, double tau_s,
                    double* out_w) {
  if (!params || !out_w) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_w = wpcn::p2_cap(p, tau_s);
  });
}

wpcn_rc wpcn_avg_rate_hardened(const wpcn_system_params* params, double p_w,
                               double tau_s, double* out_bps) {
  if (!params || !out_bps) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_bps = wpcn::avg_rate_hardened(p, wpcn::Allocation{p_w, tau_s});
  });
}

wpcn_rc wpcn_avg_rate_exact(const wpcn_system_params* params, double p_w,
                            double tau_s, double h_norm2, double g_norm2,
                            double* out_bps) {
  if (!params || !out_bps) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_bps = wpcn::avg_rate_exact(p, wpcn::Allocation{p_w, tau_s}, h_norm2,
                                    g_norm2);
  });
}

wpcn_rc wpcn_energy_efficiency(const wpcn_system_params* params, double p_w,
                               double tau_s, double* out_bits_per_joule) {
  if (!params || !out_bits_per_joule) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_bits_per_joule =
        wpcn::energy_efficiency(p, wpcn::Allocation{p_w, tau_s});
  });
}

wpcn_rc wpcn_harvested_energy(const wpcn_system_params* params, double p_w,
                              double tau_s, double* out_joules) {
  if (!params || !out_joules) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_joules =
        wpcn::harvested_energy_hardened(p, wpcn::Allocation{p_w, tau_s});
  });
}

wpcn_rc wpcn_check_feasible(const wpcn_system_params* params, double p_w,
                            double tau_s, int variant, int* out_feasibility) {
  if (!params || !out_feasibility) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::SystemParams p = to_cpp(*params);
    wpcn::validate(p);
    *out_feasibility = static_cast<int>(
        wpcn::check_feasible(p, wpcn::Allocation{p_w, tau_s},
                             to_variant(variant)));
  });
}

wpcn_rc wpcn_max_achievable_rate(const wpcn_system_params* params, int variant,
                                 double* out_bps) {
  if (!params || !out_bps) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    *out_bps = wpcn::max_achievable_rate(to_cpp(*params), to_variant(variant));
  });
}

wpcn_rc wpcn_solve_joint(const wpcn_system_params* params,
                         const wpcn_solver_config* cfg, wpcn_solution** out) {
  if (!params || !cfg || !out) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    auto handle = std::make_unique<wpcn_solution_impl>();
    handle->solution = wpcn::solve_joint(to_cpp(*params), to_cpp(*cfg));
    *out = handle.release();
  });
}

wpcn_rc wpcn_solve_duration_only(const wpcn_system_params* params,
                                 const wpcn_solver_config* cfg,
                                 wpcn_solution** out) {
  if (!params || !cfg || !out) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    auto handle = std::make_unique<wpcn_solution_impl>();
    handle->solution =
        wpcn::solve_duration_only(to_cpp(*params), to_cpp(*cfg));
    *out = handle.release();
  });
}

wpcn_rc wpcn_grid_search(const wpcn_system_params* params, int variant,
                         const wpcn_grid_spec* grid, wpcn_solution** out) {
  if (!params || !grid || !out) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    wpcn::GridSpec spec;
    spec.n_p = grid->n_p;
    spec.n_tau = grid->n_tau;
    spec.refine_levels = grid->refine_levels;
    spec.refine_factor = grid->refine_factor;
    auto handle = std::make_unique<wpcn_solution_impl>();
    handle->solution =
        wpcn::grid_search(to_cpp(*params), to_variant(variant), spec);
    *out = handle.release();
  });
}

void wpcn_solution_free(wpcn_solution* sol) { delete sol; }

wpcn_rc wpcn_solution_status(const wpcn_solution* sol, int* out_status) {
  if (!sol || !out_status) return WPCN_ERR_NULL_ARGUMENT;
  *out_status = static_cast<int>(sol->solution.status);
  return WPCN_OK;
}

wpcn_rc wpcn_solution_allocation(const wpcn_solution* sol, double* out_p_w,
                                 double* out_tau_s) {
  if (!sol || !out_p_w || !out_tau_s) return WPCN_ERR_NULL_ARGUMENT;
  *out_p_w = sol->solution.alloc.p_w;
  *out_tau_s = sol->solution.alloc.tau_s;
  return WPCN_OK;
}

wpcn_rc wpcn_solution_ee(const wpcn_solution* sol,
                         double* out_bits_per_joule) {
  if (!sol || !out_bits_per_joule) return WPCN_ERR_NULL_ARGUMENT;
  *out_bits_per_joule = sol->solution.ee_bits_per_joule;
  return WPCN_OK;
}

wpcn_rc wpcn_solution_rate(const wpcn_solution* sol, double* out_bps) {
  if (!sol || !out_bps) return WPCN_ERR_NULL_ARGUMENT;
  *out_bps = sol->solution.rate_bps;
  return WPCN_OK;
}

wpcn_rc wpcn_solution_outer_iterations(const wpcn_solution* sol,
                                       uint32_t* out_iterations) {
  if (!sol || !out_iterations) return WPCN_ERR_NULL_ARGUMENT;
  *out_iterations = sol->solution.outer_iterations;
  return WPCN_OK;
}

wpcn_rc wpcn_solution_trace_size(const wpcn_solution* sol, size_t* out_size) {
  if (!sol || !out_size) return WPCN_ERR_NULL_ARGUMENT;
  *out_size = sol->solution.trace.size();
  return WPCN_OK;
}

wpcn_rc wpcn_solution_trace_entry(const wpcn_solution* sol, size_t index,
                                  double* out_q, double* out_f) {
  if (!sol || !out_q || !out_f) return WPCN_ERR_NULL_ARGUMENT;
  if (index >= sol->solution.trace.size()) return WPCN_ERR_OUT_OF_RANGE;
  *out_q = sol->solution.trace[index].q_bits_per_joule;
  *out_f = sol->solution.trace[index].f_bits;
  return WPCN_OK;
}

wpcn_rc wpcn_hardening_stats(uint32_t n_t, uint32_t m, uint64_t seed,
                             double* out_mean_ratio, double* out_std_ratio) {
  if (!out_mean_ratio || !out_std_ratio) return WPCN_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const wpcn::HardeningStats stats = wpcn::hardening_stats(n_t, m, seed);
    *out_mean_ratio = stats.mean_ratio;
    *out_std_ratio = stats.std_ratio;
  });
}

wpcn_rc wpcn_rate_gap_stats(const wpcn_system_params* params, double p_w,
                            double tau_s, uint32_t m, uint64_t seed,
                            double* out_mean_rel_gap, double* out_max_rel_gap,
                            uint32_t* out_excluded) {
  if (!params || !out_mean_rel_gap || !out_max_rel_gap || !out_excluded) {
    return WPCN_ERR_NULL_ARGUMENT;
  }
  return guarded([&] {
    const wpcn::RateGapStats stats = wpcn::rate_gap_stats(
        to_cpp(*params), wpcn::Allocation{p_w, tau_s}, m, seed);
    *out_mean_rel_gap = stats.mean_rel_gap;
    *out_max_rel_gap = stats.max_rel_gap;
    *out_excluded = stats.n_excluded;
  });
}

}  // extern "C"
