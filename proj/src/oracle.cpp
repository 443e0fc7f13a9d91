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

#include "wpcn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wpcn {
namespace {

struct Window {
  double p_lo, p_hi;
  double tau_lo, tau_hi;
};

struct BestCell {
  Allocation alloc{0.0, 0.0};
  double ee = -1.0;
  double rate = 0.0;
  bool found = false;

  void offer(double ee_cand, double rate_cand, const Allocation& a) {
    if (!found || ee_cand > ee ||
        (ee_cand == ee &&
         (a.p_w < alloc.p_w ||
          (a.p_w == alloc.p_w && a.tau_s < alloc.tau_s)))) {
      found = true;
      ee = ee_cand;
      rate = rate_cand;
      alloc = a;
    }
  }
};

std::vector<double> linspace(double lo, double hi, std::uint32_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = hi;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = lo + step * static_cast<double>(i);
  }
  out.back() = hi;
  return out;
}

// Level-0 axis: n points ending at hi, starting one grid step above 0.
std::vector<double> open_axis(double hi, std::uint32_t n) {
  std::vector<double> out(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = hi * static_cast<double>(i + 1) / static_cast<double>(n);
  }
  return out;
}

void scan(const SystemParams& params, ConstraintVariant variant,
          const std::vector<double>& p_axis,
          const std::vector<double>& tau_axis, BestCell& best) {
  const double T = params.slot_s;
  const double w = params.bandwidth_hz;
  const double nt = static_cast<double>(params.n_t);
  const double kc = params.eta * params.alpha * params.theta * nt * nt /
                    params.noise_power_w;
  const double p0t = params.p_static_w * T;
  const double r_min = params.r_min_bps;
  const bool exact = variant == ConstraintVariant::exact_harvest_cap;

  const size_t m = tau_axis.size();
  std::vector<double> arg_per_p(m), prefactor(m), cap(m);
  for (size_t j = 0; j < m; ++j) {
    const double tau = tau_axis[j];
    arg_per_p[j] = kc * tau / (T - tau);
    prefactor[j] = w * (T - tau) / T;
    cap[j] = exact ? params.p2_max_w * (T - tau) /
                         (params.eta * params.alpha * nt * tau)
                   : 0.0;
  }

  for (double p : p_axis) {
    for (size_t j = 0; j < m; ++j) {
      if (exact && p > cap[j] * (1.0 + kFeasRelTol)) continue;
      const double rate =
          std::max(0.0, prefactor[j] * std::log2(arg_per_p[j] * p));
      if (rate < r_min - kFeasRelTol * std::max(rate, r_min)) continue;
      const double tau = tau_axis[j];
      const double ee = rate * T / (p0t + p * tau);
      best.offer(ee, rate, Allocation{p, tau});
    }
  }
}

Window shrink(const Window& w, const Allocation& center, double factor,
              const Window& outer) {
  auto clip = [](double lo, double hi, double c, double width,
                 double floor_lo) {
    double a = std::max(std::max(lo, floor_lo), c - 0.5 * width);
    double b = std::min(hi, c + 0.5 * width);
    if (a > b) a = b;
    return std::pair<double, double>{a, b};
  };
  Window out;
  const auto [pa, pb] =
      clip(outer.p_lo, outer.p_hi, center.p_w, (w.p_hi - w.p_lo) * factor,
           outer.p_hi * 1e-12);
  const auto [ta, tb] =
      clip(outer.tau_lo, outer.tau_hi, center.tau_s,
           (w.tau_hi - w.tau_lo) * factor, outer.tau_hi * 1e-12);
  out.p_lo = pa;
  out.p_hi = pb;
  out.tau_lo = ta;
  out.tau_hi = tb;
  return out;
}

}  // namespace

void validate(const GridSpec& grid) {
  if (grid.n_p < 2 || grid.n_tau < 2) {
    throw std::invalid_argument("grid counts must be >= 2");
  }
  if (!(grid.refine_factor > 0.0) || !(grid.refine_factor < 1.0)) {
    throw std::invalid_argument("refine_factor must lie in (0, 1)");
  }
}

Solution grid_search(const SystemParams& params, ConstraintVariant variant,
                     const GridSpec& grid) {
  validate(params);
  validate(grid);
  const double T = params.slot_s;
  const double p_hi = params.p1_max_w;
  const double tau_hi = variant == ConstraintVariant::box_tau_max
                            ? tau_max(params)
                            : T * (1.0 - 1e-9);

  BestCell best;
  scan(params, variant, open_axis(p_hi, grid.n_p),
       open_axis(tau_hi, grid.n_tau), best);

  Allocation center = best.alloc;
  if (!best.found) {
    // An all-infeasible grid either means a genuinely unreachable rate
    // requirement or a feasible sliver between grid lines; the 1-D rate
    // check separates the two. In the sliver case the refinement windows
    // center on the full-power rate maximizer, but only cells that pass
    // the feasibility filter can ever be returned.
    const double cap = max_achievable_rate(params, variant);
    if (cap < params.r_min_bps -
                  kFeasRelTol * std::max(cap, params.r_min_bps)) {
      Solution sol;
      sol.status = SolveStatus::infeasible;
      return sol;
    }
    auto rate = [&](double tau) {
      return clamped_avg_rate(params, Allocation{p_hi, tau});
    };
    double lo = tau_hi / static_cast<double>(grid.n_tau);
    double best_tau = lo, best_rate = rate(lo);
    for (int i = 0; i <= 1000; ++i) {
      const double tau = lo + (tau_hi - lo) * i / 1000.0;
      if (rate(tau) > best_rate) {
        best_rate = rate(tau);
        best_tau = tau;
      }
    }
    center = Allocation{p_hi, best_tau};
  }

  const Window outer{p_hi * 1e-12, p_hi, tau_hi * 1e-12, tau_hi};
  Window window{p_hi / grid.n_p, p_hi, tau_hi / grid.n_tau, tau_hi};
  for (std::uint32_t level = 0; level < grid.refine_levels; ++level) {
    window = shrink(window, center, grid.refine_factor, outer);
    scan(params, variant, linspace(window.p_lo, window.p_hi, grid.n_p),
         linspace(window.tau_lo, window.tau_hi, grid.n_tau), best);
    if (best.found) center = best.alloc;
  }

  Solution sol;
  if (!best.found) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }
  sol.alloc = best.alloc;
  sol.ee_bits_per_joule = best.ee;
  sol.rate_bps = best.rate;
  sol.status = SolveStatus::optimal;
  sol.outer_iterations = grid.refine_levels;
  return sol;
}

}  // namespace wpcn
