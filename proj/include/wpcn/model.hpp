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

#ifndef WPCN_MODEL_HPP
#define WPCN_MODEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Closed-form link model for a wirelessly powered communication slot:
// a large-array source beamforms power to a single-antenna device for a
// duration tau, and the device spends the remaining slot transmitting
// uplink data with the harvested energy. Everything here is a pure
// function over value types.
namespace wpcn {

struct SystemParams {
  double bandwidth_hz;    // uplink spectrum bandwidth W
  double slot_s;          // slot length T
  double eta;             // RF-to-storage conversion efficiency, in (0, 1]
  double alpha;           // downlink path-loss gain
  double theta;           // uplink path-loss gain
  double noise_power_w;   // receiver noise power sigma^2
  std::uint32_t n_t;      // antenna count at the source
  double p_static_w;      // static circuit power P0
  double p1_max_w;        // transmit power cap at the source
  double p2_max_w;        // transmit power cap at the device
  double r_min_bps;       // minimum average rate (0 disables the QoS constraint)
};

// Parameter set used by the bundled reference scenario and most tests:
// W = 10 kHz, T = 5 ms, eta = 0.8, alpha = theta = 0.05, sigma^2 = 1 W,
// N_t = 100, P0 = 45 W, P1_max = P2_max = 15 W, r_min = 12 kb/s.
SystemParams reference_params();

// Decision variables: source transmit power and power-transfer duration.
struct Allocation {
  double p_w;
  double tau_s;
};

// Which form of the device-side power cap is enforced. The box form
// (tau <= tau_max) is the constraint the solver searches under; the exact
// form (p <= p2_cap(tau)) is a superset kept for oracle comparisons.
enum class ConstraintVariant { box_tau_max, exact_harvest_cap };

// First violated constraint in the fixed check order: source power cap,
// device power cap (box or exact form), slot bound, rate requirement.
enum class Feasibility {
  feasible,
  violates_p1,
  violates_p2,
  violates_tau,
  violates_qos,
};

// Relative tolerance for feasibility comparisons.
inline constexpr double kFeasRelTol = 1e-9;

// Throws std::invalid_argument naming the offending field.
void validate(const SystemParams& params);

// Throws std::domain_error if the allocation is outside p > 0, 0 < tau < T.
void validate(const SystemParams& params, const Allocation& alloc);

// Matched-filter transmit weights w = h / ||h||. Throws std::domain_error
// on a zero or non-finite input.
std::vector<std::complex<double>> mrt_weights(
    std::span<const std::complex<double>> h);

// Power picked up by the device: eta * alpha * p * |h^H w|^2. Requires a
// unit-norm w (within 1e-9) and p >= 0.
double harvested_power(const SystemParams& params, double p_w,
                       std::span<const std::complex<double>> h,
                       std::span<const std::complex<double>> w);

// Energy banked over the transfer phase under channel hardening
// (||h||^2 -> N_t): eta * alpha * p * N_t * tau.
double harvested_energy_hardened(const SystemParams& params,
                                 const Allocation& alloc);

// Slot-averaged uplink rate with explicit fading norms,
// ((T-tau)/T) * W * log2(1 + eta*alpha*theta*p*tau*h2*g2 / ((T-tau)*sigma^2)).
double avg_rate_exact(const SystemParams& params, const Allocation& alloc,
                      double h_norm2, double g_norm2);

// Hardened approximation of the slot-averaged rate,
// ((T-tau)/T) * W * log2(eta*alpha*theta*N_t^2*p*tau / ((T-tau)*sigma^2)).
// Negative when the log argument is below 1; callers that report rates or
// ratios clamp at zero, while calculus (solver derivatives, Dinkelbach
// values) uses this raw form.
double avg_rate_hardened(const SystemParams& params, const Allocation& alloc);

// max(0, avg_rate_hardened); also defined (as 0) for p <= 0 or tau >= T,
// which the raw form rejects.
double clamped_avg_rate(const SystemParams& params, const Allocation& alloc);

// Delivered bits per Joule over one slot:
// max(0, avg_rate_hardened) * T / (P0*T + p*tau).
double energy_efficiency(const SystemParams& params, const Allocation& alloc);

// Largest transfer duration compatible with running the source at full
// power: P2_max * T / (eta*alpha*N_t*P1_max + P2_max). Always in (0, T).
double tau_max(const SystemParams& params);

// Source power admissible under the exact device cap at a given duration:
// P2_max * (T-tau) / (eta*alpha*N_t*tau), strictly decreasing in tau.
// Requires 0 < tau < T.
double p2_cap(const SystemParams& params, double tau_s);

// Checks the constraint set in the fixed order above, with relative
// tolerance kFeasRelTol, and reports the first violation.
Feasibility check_feasible(const SystemParams& params, const Allocation& alloc,
                           ConstraintVariant variant);

}  // namespace wpcn

#endif  // WPCN_MODEL_HPP
