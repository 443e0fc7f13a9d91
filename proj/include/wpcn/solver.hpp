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

#ifndef WPCN_SOLVER_HPP
#define WPCN_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "wpcn/model.hpp"

// Energy-efficiency maximization over (p, tau): a Dinkelbach outer loop on
// the rate/energy ratio, with the parametric subproblem solved through its
// stationarity conditions plus projected-subgradient multiplier updates.
namespace wpcn {

// Multipliers for, in order: the source power cap, the tau <= tau_max box,
// the slot bound, and the minimum-rate requirement. All kept nonnegative.
struct DualState {
  double mu = 0.0;
  double vartheta = 0.0;
  double nu = 0.0;
  double upsilon = 0.0;
};

struct SolverConfig {
  double epsilon_bits;        // Dinkelbach termination threshold
  double step_mu;             // multiplier step sizes
  double step_vartheta;
  double step_nu;
  double step_upsilon;
  std::uint32_t max_outer;
  std::uint32_t max_dual_iters;
  double bisection_tol_s;
  double init_fraction;       // starting point as a fraction of the box
  bool paper_eq18_literal = false;  // see rate_deriv_tau

  // Defaults tuned to the reference scenario scale; epsilon is
  // 1e-6 * W * T bits.
  static SolverConfig defaults(const SystemParams& params);
};

void validate(const SolverConfig& cfg);

enum class SolveStatus { optimal, infeasible, max_iterations };

struct TracePoint {
  double q_bits_per_joule;  // ratio entering the outer iteration
  double f_bits;            // parametric objective at the inner optimum
};

struct Solution {
  Allocation alloc{0.0, 0.0};
  double ee_bits_per_joule = 0.0;
  double rate_bps = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  std::uint32_t outer_iterations = 0;
  std::vector<TracePoint> trace;
};

// Parametric objective Phi(p, tau; q) = R(p, tau)*T - q*(P0*T + p*tau),
// in bits per slot, using the raw (unclamped) hardened rate.
double dinkelbach_value(const SystemParams& params, const Allocation& alloc,
                        double q);

// Analytic dR/dp = W*(T-tau) / (ln2 * T * p).
double rate_deriv_p(const SystemParams& params, const Allocation& alloc);

// Analytic dR/dtau = W * (1/(tau*ln2) - (1/T)*log2(arg)) where arg is the
// rate's log argument. With literal_form the 1/(tau*ln2) term is replaced
// by 1/((T-tau)*ln2); that variant does not match finite differences of
// the rate and is kept only as a comparison mode.
double rate_deriv_tau(const SystemParams& params, const Allocation& alloc,
                      bool literal_form = false);

// Power stationary point of the Lagrangian at fixed tau and multipliers:
// W*(T+upsilon)*(T-tau) / (ln2*T*(q*tau + mu)), clamped to (0, P1_max].
// An unbounded stationary point (q*tau + mu = 0) clamps to P1_max.
double stationary_p(const SystemParams& params, double tau_s, double q,
                    double mu, double upsilon);

// Duration stationarity residual (T+upsilon)*dR/dtau - q*p - vartheta - nu;
// its root in tau locates the inner stationary point. Throws
// std::domain_error when the rate's log argument is not positive.
double tau_stationarity_residual(const SystemParams& params,
                                 const Allocation& alloc, double q,
                                 const DualState& duals,
                                 bool literal_form = false);

// One projected subgradient step on all four multipliers using the
// constraint residuals (P1_max-p), (tau_max-tau), (T-tau), (rate-r_min).
DualState update_duals(const SystemParams& params, const Allocation& alloc,
                       const DualState& duals, const SolverConfig& cfg);

struct InnerResult {
  Allocation alloc{0.0, 0.0};
  DualState duals;
  // False when the rate's log argument stays below 1 over the whole box,
  // i.e. no positive-rate point exists.
  bool feasible = false;
};

// Maximizes the Lagrangian at fixed q: alternates a bisection for the
// duration stationary point (with the power stationary point substituted)
// and multiplier updates, then projects the pair into the
// {p <= P1_max, tau <= tau_max} box.
InnerResult inner_maximize(const SystemParams& params, double q,
                           const SolverConfig& cfg);

// Largest clamped average rate over the feasible set. Rate is increasing
// in p, so p is pinned to P1_max (box variant) or min(P1_max, p2_cap(tau))
// (exact variant) and the remaining unimodal 1-D problem is solved by
// golden section with boundary checks.
double max_achievable_rate(const SystemParams& params,
                           ConstraintVariant variant);

// Joint optimization of (p, tau). Returns Infeasible with ee = 0 when the
// rate requirement cannot be met anywhere in the box.
Solution solve_joint(const SystemParams& params, const SolverConfig& cfg);

// Baseline that fixes p = P1_max and optimizes the duration only.
Solution solve_duration_only(const SystemParams& params,
                             const SolverConfig& cfg);

}  // namespace wpcn

#endif  // WPCN_SOLVER_HPP
