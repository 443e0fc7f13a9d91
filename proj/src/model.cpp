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

#include "wpcn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wpcn {
namespace {

// a <= b up to a relative slack of kFeasRelTol.
bool approx_le(double a, double b) {
  return a <= b + kFeasRelTol * std::max(std::fabs(a), std::fabs(b));
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

SystemParams reference_params() {
  SystemParams params;
  params.bandwidth_hz = 1.0e4;
  params.slot_s = 5.0e-3;
  params.eta = 0.8;
  params.alpha = 0.05;
  params.theta = 0.05;
  params.noise_power_w = 1.0;
  params.n_t = 100;
  params.p_static_w = 45.0;
  params.p1_max_w = 15.0;
  params.p2_max_w = 15.0;
  params.r_min_bps = 12.0e3;
  return params;
}

void validate(const SystemParams& p) {
  require_positive(p.bandwidth_hz, "bandwidth_hz");
  require_positive(p.slot_s, "slot_s");
  require_positive(p.eta, "eta");
  if (p.eta > 1.0) throw std::invalid_argument("eta must be <= 1");
  require_positive(p.alpha, "alpha");
  require_positive(p.theta, "theta");
  require_positive(p.noise_power_w, "noise_power_w");
  if (p.n_t < 1) throw std::invalid_argument("n_t must be >= 1");
  require_positive(p.p_static_w, "p_static_w");
  require_positive(p.p1_max_w, "p1_max_w");
  require_positive(p.p2_max_w, "p2_max_w");
  if (!(p.r_min_bps >= 0.0) || !std::isfinite(p.r_min_bps)) {
    throw std::invalid_argument("r_min_bps must be >= 0");
  }
}

void validate(const SystemParams& params, const Allocation& alloc) {
  if (!std::isfinite(alloc.p_w) || !(alloc.p_w > 0.0)) {
    throw std::domain_error("allocation power must be positive");
  }
  if (!std::isfinite(alloc.tau_s) || !(alloc.tau_s > 0.0) ||
      alloc.tau_s >= params.slot_s) {
    throw std::domain_error("transfer duration must lie in (0, slot)");
  }
}

std::vector<std::complex<double>> mrt_weights(
    std::span<const std::complex<double>> h) {
  double norm2 = 0.0;
  for (const auto& z : h) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw std::domain_error("mrt_weights requires a nonzero finite vector");
  }
  const double inv_norm = 1.0 / std::sqrt(norm2);
  std::vector<std::complex<double>> w(h.begin(), h.end());
  for (auto& z : w) z *= inv_norm;
  return w;
}

double harvested_power(const SystemParams& params, double p_w,
                       std::span<const std::complex<double>> h,
                       std::span<const std::complex<double>> w) {
  if (!(p_w >= 0.0)) throw std::invalid_argument("p_w must be >= 0");
  if (h.size() != w.size()) {
    throw std::invalid_argument("h and w must have equal length");
  }
  double w_norm2 = 0.0;
  std::complex<double> dot{0.0, 0.0};
  for (size_t i = 0; i < h.size(); ++i) {
    w_norm2 += std::norm(w[i]);
    dot += std::conj(h[i]) * w[i];
  }
  if (std::fabs(w_norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument("w must have unit norm");
  }
  return params.eta * params.alpha * p_w * std::norm(dot);
}

double harvested_energy_hardened(const SystemParams& params,
                                 const Allocation& alloc) {
  validate(params, alloc);
  return params.eta * params.alpha * alloc.p_w *
         static_cast<double>(params.n_t) * alloc.tau_s;
}

double avg_rate_exact(const SystemParams& params, const Allocation& alloc,
                      double h_norm2, double g_norm2) {
  if (!(h_norm2 >= 0.0) || !(g_norm2 >= 0.0)) {
    throw std::invalid_argument("fading norms must be >= 0");
  }
  if (alloc.tau_s >= params.slot_s) {
    throw std::domain_error("transfer duration must be < slot");
  }
  validate(params, alloc);
  const double remaining = params.slot_s - alloc.tau_s;
  const double snr = params.eta * params.alpha * params.theta * alloc.p_w *
                     alloc.tau_s * h_norm2 * g_norm2 /
                     (remaining * params.noise_power_w);
  return remaining / params.slot_s * params.bandwidth_hz * std::log2(1.0 + snr);
}

double avg_rate_hardened(const SystemParams& params, const Allocation& alloc) {
  if (alloc.tau_s >= params.slot_s) {
    throw std::domain_error("transfer duration must be < slot");
  }
  validate(params, alloc);
  const double remaining = params.slot_s - alloc.tau_s;
  const double nt = static_cast<double>(params.n_t);
  const double arg = params.eta * params.alpha * params.theta * nt * nt *
                     alloc.p_w * alloc.tau_s /
                     (remaining * params.noise_power_w);
  return remaining / params.slot_s * params.bandwidth_hz * std::log2(arg);
}

double clamped_avg_rate(const SystemParams& params, const Allocation& alloc) {
  if (!(alloc.p_w > 0.0) || !(alloc.tau_s > 0.0) ||
      alloc.tau_s >= params.slot_s) {
    return 0.0;
  }
  return std::max(0.0, avg_rate_hardened(params, alloc));
}

double energy_efficiency(const SystemParams& params, const Allocation& alloc) {
  const double bits = clamped_avg_rate(params, alloc) * params.slot_s;
  const double joules =
      params.p_static_w * params.slot_s + alloc.p_w * alloc.tau_s;
  return bits / joules;
}

double tau_max(const SystemParams& params) {
  return params.p2_max_w * params.slot_s /
         (params.eta * params.alpha * static_cast<double>(params.n_t) *
              params.p1_max_w +
          params.p2_max_w);
}

double p2_cap(const SystemParams& params, double tau_s) {
  if (!(tau_s > 0.0) || tau_s >= params.slot_s) {
    throw std::domain_error("p2_cap requires 0 < tau < slot");
  }
  return params.p2_max_w * (params.slot_s - tau_s) /
         (params.eta * params.alpha * static_cast<double>(params.n_t) * tau_s);
}

Feasibility check_feasible(const SystemParams& params, const Allocation& alloc,
                           ConstraintVariant variant) {
  // tau <= 0 falls outside the (0, T] slot interval; report it on the
  // duration constraint since no other check is defined there.
  if (!(alloc.tau_s > 0.0)) return Feasibility::violates_tau;
  if (!approx_le(alloc.p_w, params.p1_max_w)) return Feasibility::violates_p1;
  if (variant == ConstraintVariant::box_tau_max) {
    if (!approx_le(alloc.tau_s, tau_max(params))) {
      return Feasibility::violates_p2;
    }
  } else {
    // Raw cap expression: nonpositive for tau >= T, which correctly trips
    // this check before the slot bound (fixed report order).
    const double cap =
        params.p2_max_w * (params.slot_s - alloc.tau_s) /
        (params.eta * params.alpha * static_cast<double>(params.n_t) *
         alloc.tau_s);
    if (!approx_le(alloc.p_w, cap)) return Feasibility::violates_p2;
  }
  if (!approx_le(alloc.tau_s, params.slot_s)) return Feasibility::violates_tau;
  const double rate = clamped_avg_rate(params, alloc);
  if (!approx_le(params.r_min_bps, rate)) return Feasibility::violates_qos;
  return Feasibility::feasible;
}

}  // namespace wpcn
