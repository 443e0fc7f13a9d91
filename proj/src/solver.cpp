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

#include "wpcn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpcn {
namespace {

// Relative inset from the tau = T singularity when a search touches it.
constexpr double kTauEdge = 1e-9;
// Padding added above the unit-log-argument duration when bracketing.
constexpr double kTauBracketPad = 1e-12;

// The hardened rate's log argument is snr_coeff * p * tau / (T - tau).
double snr_coeff(const SystemParams& params) {
  const double nt = static_cast<double>(params.n_t);
  return params.eta * params.alpha * params.theta * nt * nt /
         params.noise_power_w;
}

double log_arg(const SystemParams& params, double p_w, double tau_s) {
  return snr_coeff(params) * p_w * tau_s / (params.slot_s - tau_s);
}

// Smallest duration with log argument >= 1 at a given power.
double tau_unit_arg(const SystemParams& params, double p_w) {
  return params.slot_s / (1.0 + snr_coeff(params) * p_w);
}

bool approx_ge(double a, double b) {
  return a >= b - kFeasRelTol * std::max(std::fabs(a), std::fabs(b));
}

// Golden-section maximization of a unimodal function on [lo, hi], with the
// endpoints always evaluated so boundary maxima are hit exactly.
template <typename F>
double maximize_unimodal(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  double best_x = 0.5 * (a + b);
  double best_f = f(best_x);
  for (double x : {lo, hi, x1, x2}) {
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

// Bisection for a root of f on [lo, hi]; requires a sign change.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double f_lo, double tol) {
  const bool lo_positive = f_lo > 0.0;
  double a = lo, b = hi;
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm > 0.0) == lo_positive) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double clamped_rate_at(const SystemParams& params, double p_w, double tau_s) {
  return clamped_avg_rate(params, Allocation{p_w, tau_s});
}

// Rate on the p = P1_max slice (box variant) or with the exact device cap
// substituted (p = min(P1_max, p2_cap(tau))).
double slice_rate(const SystemParams& params, ConstraintVariant variant,
                  double tau_s) {
  double p = params.p1_max_w;
  if (variant == ConstraintVariant::exact_harvest_cap) {
    p = std::min(p, p2_cap(params, tau_s));
  }
  return clamped_rate_at(params, p, tau_s);
}

struct QosInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

// Durations on the p = P1_max slice meeting the rate requirement, clipped
// to [lo, hi]. The slice rate is concave in tau, so the set is an interval
// around the rate maximizer.
QosInterval qos_interval_on_slice(const SystemParams& params, double lo,
                                  double hi, double tol) {
  QosInterval out;
  if (params.r_min_bps <= 0.0) {
    out = {lo, hi, false};
    return out;
  }
  auto rate = [&](double tau) {
    return clamped_rate_at(params, params.p1_max_w, tau);
  };
  const double tau_peak = maximize_unimodal(rate, lo, hi, tol);
  if (!approx_ge(rate(tau_peak), params.r_min_bps)) return out;
  auto excess = [&](double tau) { return rate(tau) - params.r_min_bps; };
  double a = lo;
  if (excess(lo) < 0.0) {
    a = bisect_root(excess, lo, tau_peak, excess(lo), tol);
  }
  double b = hi;
  if (excess(hi) < 0.0) {
    b = bisect_root(excess, tau_peak, hi, excess(tau_peak), tol);
  }
  out = {a, b, false};
  return out;
}

}  // namespace

SolverConfig SolverConfig::defaults(const SystemParams& params) {
  SolverConfig cfg;
  cfg.epsilon_bits = 1e-6 * params.bandwidth_hz * params.slot_s;
  cfg.step_mu = 1e-3;
  cfg.step_vartheta = 1e-3;
  cfg.step_nu = 1.0;
  cfg.step_upsilon = 1e-7;
  cfg.max_outer = 100;
  cfg.max_dual_iters = 5000;
  cfg.bisection_tol_s = 1e-12;
  cfg.init_fraction = 0.5;
  cfg.paper_eq18_literal = false;
  return cfg;
}

void validate(const SolverConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  positive(cfg.epsilon_bits, "epsilon_bits");
  positive(cfg.step_mu, "step_mu");
  positive(cfg.step_vartheta, "step_vartheta");
  positive(cfg.step_nu, "step_nu");
  positive(cfg.step_upsilon, "step_upsilon");
  positive(cfg.bisection_tol_s, "bisection_tol_s");
  if (cfg.max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (cfg.max_dual_iters < 1) {
    throw std::invalid_argument("max_dual_iters must be >= 1");
  }
  if (!(cfg.init_fraction > 0.0) || !(cfg.init_fraction < 1.0)) {
    throw std::invalid_argument("init_fraction must lie in (0, 1)");
  }
}

double dinkelbach_value(const SystemParams& params, const Allocation& alloc,
                        double q) {
  const double bits = avg_rate_hardened(params, alloc) * params.slot_s;
  const double joules =
      params.p_static_w * params.slot_s + alloc.p_w * alloc.tau_s;
  return bits - q * joules;
}

double rate_deriv_p(const SystemParams& params, const Allocation& alloc) {
  validate(params, alloc);
  return params.bandwidth_hz * (params.slot_s - alloc.tau_s) /
         (std::numbers::ln2 * params.slot_s * alloc.p_w);
}

double rate_deriv_tau(const SystemParams& params, const Allocation& alloc,
                      bool literal_form) {
  validate(params, alloc);
  const double arg = log_arg(params, alloc.p_w, alloc.tau_s);
  if (!(arg > 0.0)) throw std::domain_error("log argument must be positive");
  const double lead =
      literal_form ? 1.0 / ((params.slot_s - alloc.tau_s) * std::numbers::ln2)
                   : 1.0 / (alloc.tau_s * std::numbers::ln2);
  return params.bandwidth_hz * (lead - std::log2(arg) / params.slot_s);
}

double stationary_p(const SystemParams& params, double tau_s, double q,
                    double mu, double upsilon) {
  const double denom = q * tau_s + mu;
  if (!(denom > 0.0)) return params.p1_max_w;
  const double p = params.bandwidth_hz * (params.slot_s + upsilon) *
                   (params.slot_s - tau_s) /
                   (std::numbers::ln2 * params.slot_s * denom);
  return std::min(p, params.p1_max_w);
}

double tau_stationarity_residual(const SystemParams& params,
                                 const Allocation& alloc, double q,
                                 const DualState& duals, bool literal_form) {
  return (params.slot_s + duals.upsilon) *
             rate_deriv_tau(params, alloc, literal_form) -
         q * alloc.p_w - duals.vartheta - duals.nu;
}

DualState update_duals(const SystemParams& params, const Allocation& alloc,
                       const DualState& duals, const SolverConfig& cfg) {
  auto project = [](double v) { return v > 0.0 ? v : 0.0; };
  const double rate = clamped_avg_rate(params, alloc);
  DualState next;
  next.mu = project(duals.mu - cfg.step_mu * (params.p1_max_w - alloc.p_w));
  next.vartheta = project(duals.vartheta -
                          cfg.step_vartheta * (tau_max(params) - alloc.tau_s));
  next.nu = project(duals.nu - cfg.step_nu * (params.slot_s - alloc.tau_s));
  next.upsilon = project(duals.upsilon -
                         cfg.step_upsilon * (rate - params.r_min_bps));
  return next;
}

InnerResult inner_maximize(const SystemParams& params, double q,
                           const SolverConfig& cfg) {
  const double T = params.slot_s;
  const double tau_cap = tau_max(params);
  const double tau_hi = std::min(tau_cap, T * (1.0 - kTauEdge));

  // Nowhere in the box does the rate turn positive: the restricted search
  // region is empty.
  if (log_arg(params, params.p1_max_w, tau_hi) < 1.0) {
    return InnerResult{};
  }

  DualState duals;
  double p_cur = params.p1_max_w;
  double tau_cur = tau_hi;
  double p_prev = -1.0, tau_prev = -1.0;

  for (std::uint32_t it = 0; it < cfg.max_dual_iters; ++it) {
    const double tau_lo = tau_unit_arg(params, p_cur) + kTauBracketPad;
    if (tau_lo >= tau_hi) {
      // Degenerate bracket at the current power; fall back to the upper
      // end, where the argument is largest.
      tau_cur = tau_hi;
    } else {
      auto residual = [&](double tau) {
        const Allocation a{
            stationary_p(params, tau, q, duals.mu, duals.upsilon), tau};
        return tau_stationarity_residual(params, a, q, duals,
                                         cfg.paper_eq18_literal);
      };
      const double r_lo = residual(tau_lo);
      const double r_hi = residual(tau_hi);
      if ((r_lo > 0.0) == (r_hi > 0.0)) {
        // No interior stationary point: the Lagrangian is monotone along
        // the stationary-power curve, so take the better endpoint.
        auto objective = [&](double tau) {
          const Allocation a{
              stationary_p(params, tau, q, duals.mu, duals.upsilon), tau};
          return dinkelbach_value(params, a, q);
        };
        tau_cur = objective(tau_lo) >= objective(tau_hi) ? tau_lo : tau_hi;
      } else {
        tau_cur = bisect_root(residual, tau_lo, tau_hi, r_lo,
                              cfg.bisection_tol_s);
      }
    }
    const double p_new =
        stationary_p(params, tau_cur, q, duals.mu, duals.upsilon);
    const Allocation cur{p_new, tau_cur};
    const DualState next = update_duals(params, cur, duals, cfg);
    const bool duals_fixed =
        next.mu == duals.mu && next.vartheta == duals.vartheta &&
        next.nu == duals.nu && next.upsilon == duals.upsilon;
    const bool primal_fixed =
        it > 0 && std::fabs(tau_cur - tau_prev) <= cfg.bisection_tol_s &&
        std::fabs(p_new - p_prev) <= 1e-12 * params.p1_max_w;
    duals = next;
    p_prev = p_cur = p_new;
    tau_prev = tau_cur;
    if (duals_fixed && primal_fixed) break;
  }

  InnerResult out;
  out.alloc = Allocation{std::min(p_cur, params.p1_max_w),
                         std::min(tau_cur, tau_cap)};
  out.duals = duals;
  out.feasible = true;
  return out;
}

double max_achievable_rate(const SystemParams& params,
                           ConstraintVariant variant) {
  validate(params);
  const double T = params.slot_s;
  const double hi = variant == ConstraintVariant::box_tau_max
                        ? tau_max(params)
                        : T * (1.0 - kTauEdge);
  const double lo = tau_unit_arg(params, params.p1_max_w) + kTauBracketPad;
  if (lo >= hi) {
    // Log argument stays at or below 1 everywhere; the clamped rate is 0.
    return slice_rate(params, variant, hi);
  }
  auto rate = [&](double tau) { return slice_rate(params, variant, tau); };
  const double tau_best = maximize_unimodal(rate, lo, hi, 1e-13 * T);
  return rate(tau_best);
}

namespace {

// Deterministic repair applied when the subgradient loop leaves the rate
// constraint active but only satisfied to O(step): the constrained optimum
// then sits on the rate = r_min boundary, which this locates directly.
Allocation enforce_qos(const SystemParams& params, const SolverConfig& cfg,
                       Allocation alloc) {
  if (params.r_min_bps <= 0.0) return alloc;
  if (approx_ge(clamped_avg_rate(params, alloc), params.r_min_bps)) {
    return alloc;
  }
  const double T = params.slot_s;
  const double tau_cap = tau_max(params);
  const double hi = std::min(tau_cap, T * (1.0 - kTauEdge));
  const double lo = tau_unit_arg(params, params.p1_max_w) + kTauBracketPad;
  if (lo >= hi) return alloc;
  const double tol = cfg.bisection_tol_s;
  const QosInterval band = qos_interval_on_slice(params, lo, hi, tol);
  if (band.empty) return alloc;

  // Candidate A: best full-power point inside the admissible band.
  auto slice_ee = [&](double tau) {
    return energy_efficiency(params, Allocation{params.p1_max_w, tau});
  };
  const double tau_a = maximize_unimodal(slice_ee, band.lo, band.hi, tol);
  Allocation best{params.p1_max_w, tau_a};
  double best_ee = slice_ee(tau_a);

  // Candidate B: along the rate = r_min curve the efficiency is
  // r_min * T / (P0*T + u(tau)) with u the transmit energy needed to meet
  // the requirement, so minimizing u(tau) maximizes it. u is unimodal, and
  // the curve respects the source power cap exactly on the slice band.
  const double kc = snr_coeff(params);
  const double k_exp = params.r_min_bps * T / params.bandwidth_hz;
  auto curve_energy = [&](double tau) {
    const double s = T - tau;
    return s * std::exp2(k_exp / s) / kc;
  };
  const double tau_b = maximize_unimodal(
      [&](double tau) { return -curve_energy(tau); }, band.lo, band.hi, tol);
  const double u = curve_energy(tau_b);
  const Allocation on_curve{u / tau_b, tau_b};
  if (on_curve.p_w <= params.p1_max_w * (1.0 + kFeasRelTol) &&
      check_feasible(params, on_curve, ConstraintVariant::box_tau_max) ==
          Feasibility::feasible) {
    const double curve_ee = energy_efficiency(params, on_curve);
    if (curve_ee > best_ee) {
      best = on_curve;
      best_ee = curve_ee;
    }
  }
  return best;
}

Solution infeasible_solution() {
  Solution sol;
  sol.status = SolveStatus::infeasible;
  return sol;
}

}  // namespace

Solution solve_joint(const SystemParams& params, const SolverConfig& cfg) {
  validate(params);
  validate(cfg);
  if (!approx_ge(max_achievable_rate(params, ConstraintVariant::box_tau_max),
                 params.r_min_bps)) {
    return infeasible_solution();
  }

  Solution sol;
  Allocation alloc{cfg.init_fraction * params.p1_max_w,
                   cfg.init_fraction * tau_max(params)};
  double q = energy_efficiency(params, alloc);

  for (std::uint32_t outer = 1; outer <= cfg.max_outer; ++outer) {
    const InnerResult inner = inner_maximize(params, q, cfg);
    if (!inner.feasible) return infeasible_solution();
    const double f = dinkelbach_value(params, inner.alloc, q);
    sol.trace.push_back({q, f});
    sol.outer_iterations = outer;
    alloc = inner.alloc;
    if (f > cfg.epsilon_bits) {
      q = energy_efficiency(params, alloc);
      continue;
    }
    alloc = enforce_qos(params, cfg, alloc);
    sol.alloc = alloc;
    sol.ee_bits_per_joule = energy_efficiency(params, alloc);
    sol.rate_bps = clamped_avg_rate(params, alloc);
    sol.status = SolveStatus::optimal;
    return sol;
  }

  sol.alloc = alloc;
  sol.ee_bits_per_joule = energy_efficiency(params, alloc);
  sol.rate_bps = clamped_avg_rate(params, alloc);
  sol.status = SolveStatus::max_iterations;
  return sol;
}

Solution solve_duration_only(const SystemParams& params,
                             const SolverConfig& cfg) {
  validate(params);
  validate(cfg);
  if (!approx_ge(max_achievable_rate(params, ConstraintVariant::box_tau_max),
                 params.r_min_bps)) {
    return infeasible_solution();
  }
  const double T = params.slot_s;
  const double p1 = params.p1_max_w;
  const double hi = std::min(tau_max(params), T * (1.0 - kTauEdge));
  const double lo = tau_unit_arg(params, p1) + kTauBracketPad;
  if (lo >= hi) return infeasible_solution();
  const double tol = cfg.bisection_tol_s;

  const QosInterval band = qos_interval_on_slice(params, lo, hi, tol);
  if (band.empty) return infeasible_solution();

  auto slice_ee = [&](double tau) {
    return energy_efficiency(params, Allocation{p1, tau});
  };
  double tau_cur = maximize_unimodal(slice_ee, band.lo, band.hi, tol);

  // 1-D Dinkelbach pass over the same interval; the parametric objective is
  // concave in tau, so the golden section is exact here too.
  Solution sol;
  double q = slice_ee(tau_cur);
  for (std::uint32_t outer = 1; outer <= cfg.max_outer; ++outer) {
    auto objective = [&](double tau) {
      return dinkelbach_value(params, Allocation{p1, tau}, q);
    };
    tau_cur = maximize_unimodal(objective, band.lo, band.hi, tol);
    const double f = objective(tau_cur);
    sol.trace.push_back({q, f});
    sol.outer_iterations = outer;
    if (f > cfg.epsilon_bits) {
      q = slice_ee(tau_cur);
      continue;
    }
    sol.alloc = Allocation{p1, tau_cur};
    sol.ee_bits_per_joule = slice_ee(tau_cur);
    sol.rate_bps = clamped_avg_rate(params, sol.alloc);
    sol.status = SolveStatus::optimal;
    return sol;
  }
  sol.alloc = Allocation{p1, tau_cur};
  sol.ee_bits_per_joule = slice_ee(tau_cur);
  sol.rate_bps = clamped_avg_rate(params, sol.alloc);
  sol.status = SolveStatus::max_iterations;
  return sol;
}

}  // namespace wpcn
