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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "wpcn/model.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/solver.hpp"

using namespace wpcn;
using doctest::Approx;

namespace {

SystemParams sweep_point(double alpha, std::uint32_t n_t) {
  SystemParams p = reference_params();
  p.alpha = alpha;
  p.theta = alpha;
  p.n_t = n_t;
  return p;
}

// Dense 1-D reference maximum of the clamped rate on the p = P1_max slice.
double sweep_max_rate(const SystemParams& p, int points) {
  const double hi = tau_max(p);
  double best = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double tau = hi * static_cast<double>(i) / points;
    best = std::max(best, clamped_avg_rate(p, Allocation{p.p1_max_w, tau}));
  }
  return best;
}

// Dense 1-D reference maximum of the efficiency on the p = P1_max slice,
// restricted to rate-feasible points.
double sweep_max_ee(const SystemParams& p, int points) {
  const double hi = tau_max(p);
  double best = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double tau = hi * static_cast<double>(i) / points;
    const Allocation a{p.p1_max_w, tau};
    if (clamped_avg_rate(p, a) < p.r_min_bps) continue;
    best = std::max(best, energy_efficiency(p, a));
  }
  return best;
}

struct GradSample {
  SystemParams params;
  Allocation alloc;
};

GradSample random_grad_sample(std::mt19937_64& rng) {
  GradSample s;
  s.params = wpcn_test::random_params(rng);
  s.alloc.p_w =
      std::uniform_real_distribution<double>(0.2, s.params.p1_max_w)(rng);
  const double arg =
      std::uniform_real_distribution<double>(1.2, 500.0)(rng);
  s.alloc.tau_s = wpcn_test::tau_for_arg(s.params, s.alloc.p_w, arg);
  return s;
}

}  // namespace

TEST_CASE("dinkelbach value") {
  const SystemParams p = reference_params();
  const Allocation a{15.0, 2.5e-3};

  const double at_zero = dinkelbach_value(p, a, 0.0);
  CHECK(at_zero == Approx(avg_rate_hardened(p, a) * p.slot_s).epsilon(1e-12));
  CHECK(std::fabs(at_zero - 205.72) <= 0.01);

  const double ratio = energy_efficiency(p, a);
  CHECK(std::fabs(dinkelbach_value(p, a, ratio)) <= 1e-9 * at_zero);
  CHECK(dinkelbach_value(p, a, ratio * 1.01) < 0.0);
}

TEST_CASE("power stationary point") {
  const SystemParams p = reference_params();
  // Unclamped value 18.034 W exceeds the cap.
  CHECK(stationary_p(p, 2.5e-3, 800.0, 0.0, 0.0) == 15.0);
  CHECK(stationary_p(p, 2.5e-3, 1600.0, 0.0, 0.0) ==
        Approx(9.016841).epsilon(1e-6));
  // Unbounded stationary point clamps to the box.
  CHECK(stationary_p(p, 2.5e-3, 0.0, 0.0, 0.0) == 15.0);
}

TEST_CASE("analytic rate derivatives match central finite differences") {
  const SystemParams ref = reference_params();
  const Allocation at{15.0, 2.5e-3};
  const double h_tau = 1e-9;
  auto fd_tau = [](const SystemParams& p, const Allocation& a, double h) {
    return (avg_rate_hardened(p, Allocation{a.p_w, a.tau_s + h}) -
            avg_rate_hardened(p, Allocation{a.p_w, a.tau_s - h})) /
           (2.0 * h);
  };
  auto fd_p = [](const SystemParams& p, const Allocation& a, double h) {
    return (avg_rate_hardened(p, Allocation{a.p_w + h, a.tau_s}) -
            avg_rate_hardened(p, Allocation{a.p_w - h, a.tau_s})) /
           (2.0 * h);
  };
  CHECK(rate_deriv_tau(ref, at) ==
        Approx(fd_tau(ref, at, h_tau)).epsilon(1e-6));

  std::mt19937_64 rng(123);
  double max_literal_mismatch = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GradSample s = random_grad_sample(rng);
    const double fd_t = fd_tau(s.params, s.alloc, h_tau);
    const double fd_pw = fd_p(s.params, s.alloc, 1e-6 * s.alloc.p_w);
    CHECK(rate_deriv_tau(s.params, s.alloc) == Approx(fd_t).epsilon(1e-6));
    CHECK(rate_deriv_p(s.params, s.alloc) == Approx(fd_pw).epsilon(1e-6));

    // Negative control: the as-printed derivative form disagrees with the
    // finite difference except on the tau = T/2 coincidence line.
    const double literal = rate_deriv_tau(s.params, s.alloc, true);
    const double mismatch = std::fabs(literal - fd_t) / std::fabs(fd_t);
    max_literal_mismatch = std::max(max_literal_mismatch, mismatch);
    if (std::fabs(s.alloc.tau_s - 0.5 * s.params.slot_s) >
        0.01 * s.params.slot_s) {
      CHECK(mismatch > 1e-6);
    }
  }
  CHECK(max_literal_mismatch > 1e-3);
}

TEST_CASE("duration stationarity root satisfies the closed-form identity") {
  // Large device cap pushes tau_max to the slot edge so the zero-dual,
  // zero-q stationary point is interior.
  SystemParams p = reference_params();
  p.p2_max_w = 1e6;
  p.r_min_bps = 0.0;
  const SolverConfig cfg = SolverConfig::defaults(p);
  const InnerResult inner = inner_maximize(p, 0.0, cfg);
  REQUIRE(inner.feasible);
  CHECK(inner.alloc.p_w == p.p1_max_w);
  const double tau = inner.alloc.tau_s;
  CHECK(tau < tau_max(p));
  const double lhs = 1.0 / (tau * std::numbers::ln2);
  const double nt = static_cast<double>(p.n_t);
  const double arg = p.eta * p.alpha * p.theta * nt * nt * p.p1_max_w * tau /
                     ((p.slot_s - tau) * p.noise_power_w);
  const double rhs = std::log2(arg) / p.slot_s;
  CHECK(lhs == Approx(rhs).epsilon(1e-9));
}

TEST_CASE("stationarity residual decreases along the bracket") {
  std::mt19937_64 rng(211);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = wpcn_test::random_params(rng);
    DualState duals;
    duals.mu = std::uniform_real_distribution<double>(1e-4, 1.0)(rng);
    duals.upsilon =
        std::uniform_real_distribution<double>(0.0, p.slot_s)(rng);
    const double q = std::uniform_real_distribution<double>(0.0, 2e3)(rng);
    const double lo = wpcn_test::tau_for_arg(p, p.p1_max_w, 1.0) + 1e-12;
    const double hi = std::min(tau_max(p), p.slot_s * (1.0 - 1e-9));
    if (lo >= hi) continue;
    auto resid = [&](double tau) {
      const Allocation a{stationary_p(p, tau, q, duals.mu, duals.upsilon),
                         tau};
      return tau_stationarity_residual(p, a, q, duals);
    };
    double tau1 = std::uniform_real_distribution<double>(lo, hi)(rng);
    double tau2 = std::uniform_real_distribution<double>(lo, hi)(rng);
    if (tau1 > tau2) std::swap(tau1, tau2);
    if (tau2 - tau1 < 1e-9 * p.slot_s) continue;
    const double r1 = resid(tau1);
    const double r2 = resid(tau2);
    CHECK(r1 >= r2 - 1e-9 * std::max(1.0, std::fabs(r1)));
  }
}

TEST_CASE("dual updates project onto the nonnegative orthant") {
  SystemParams p = reference_params();
  SolverConfig cfg = SolverConfig::defaults(p);

  SUBCASE("satisfied constraints leave zero multipliers at zero") {
    const Allocation a{14.0, 0.5 * tau_max(p)};
    REQUIRE(clamped_avg_rate(p, a) > p.r_min_bps);
    const DualState next = update_duals(p, a, DualState{}, cfg);
    CHECK(next.mu == 0.0);
    CHECK(next.vartheta == 0.0);
    CHECK(next.nu == 0.0);
    CHECK(next.upsilon == 0.0);
  }
  SUBCASE("slack shrinks a positive multiplier by step times residual") {
    cfg.step_mu = 0.1;
    DualState duals;
    duals.mu = 0.5;
    const Allocation a{13.0, 0.5 * tau_max(p)};  // residual is 2 W
    const DualState next = update_duals(p, a, duals, cfg);
    CHECK(next.mu == Approx(0.3).epsilon(1e-12));
  }
  SUBCASE("violated rate requirement grows its multiplier") {
    cfg.step_upsilon = 0.1;
    const Allocation a{15.0, tau_max(p)};
    SystemParams strict = p;
    strict.r_min_bps = clamped_avg_rate(p, a) + 100.0;
    const DualState next = update_duals(strict, a, DualState{}, cfg);
    CHECK(next.upsilon == Approx(10.0).epsilon(1e-9));
  }
}

TEST_CASE("inner maximization at q = 0 lands on the rate-optimal corner") {
  const SystemParams p = reference_params();
  const SolverConfig cfg = SolverConfig::defaults(p);
  const InnerResult inner = inner_maximize(p, 0.0, cfg);
  REQUIRE(inner.feasible);
  CHECK(inner.alloc.p_w == 15.0);
  CHECK(inner.alloc.tau_s == tau_max(p));
  const double rate = clamped_avg_rate(p, inner.alloc);
  CHECK(std::fabs(rate - 49830.55) <= 0.01);
}

TEST_CASE("inner maximization output respects the box exactly") {
  const SystemParams p = reference_params();
  const SolverConfig cfg = SolverConfig::defaults(p);
  for (double q : {0.0, 500.0, 1000.0, 1e5, 1e9}) {
    const InnerResult inner = inner_maximize(p, q, cfg);
    REQUIRE(inner.feasible);
    CHECK(inner.alloc.p_w <= p.p1_max_w);
    CHECK(inner.alloc.tau_s <= tau_max(p));
    CHECK(inner.alloc.p_w > 0.0);
    CHECK(inner.alloc.tau_s > 0.0);
  }
}

TEST_CASE("a huge ratio drives the parametric objective negative") {
  const SystemParams p = reference_params();
  const SolverConfig cfg = SolverConfig::defaults(p);
  const InnerResult inner = inner_maximize(p, 1e9, cfg);
  REQUIRE(inner.feasible);
  CHECK(dinkelbach_value(p, inner.alloc, 1e9) < 0.0);
}

TEST_CASE("inner maximization reports an empty positive-rate region") {
  SystemParams p = reference_params();
  p.alpha = p.theta = 1e-6;
  p.n_t = 10;
  p.r_min_bps = 0.0;
  const SolverConfig cfg = SolverConfig::defaults(p);
  CHECK_FALSE(inner_maximize(p, 0.0, cfg).feasible);
  const Solution sol = solve_joint(p, cfg);
  CHECK(sol.status == SolveStatus::infeasible);
  CHECK(sol.ee_bits_per_joule == 0.0);
}

TEST_CASE("joint solve matches the grid oracle on the reference scenario") {
  const SystemParams p = reference_params();
  const Solution sol = solve_joint(p, SolverConfig::defaults(p));
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.alloc.p_w == 15.0);
  CHECK(std::fabs(sol.ee_bits_per_joule - 1038.8696) <= 0.01);
  CHECK(sol.alloc.tau_s == Approx(9.39754761e-4).epsilon(1e-6));

  const Solution ref = grid_search(p, ConstraintVariant::box_tau_max, {});
  REQUIRE(ref.status == SolveStatus::optimal);
  CHECK(std::fabs(sol.ee_bits_per_joule - ref.ee_bits_per_joule) <=
        0.01 * ref.ee_bits_per_joule);
  CHECK(check_feasible(p, sol.alloc, ConstraintVariant::box_tau_max) ==
        Feasibility::feasible);
}

TEST_CASE("weak links are reported infeasible with zero efficiency") {
  const SystemParams p = sweep_point(0.01, 20);
  const Solution sol = solve_joint(p, SolverConfig::defaults(p));
  CHECK(sol.status == SolveStatus::infeasible);
  CHECK(sol.ee_bits_per_joule == 0.0);
  CHECK(sol.rate_bps == 0.0);

  const Solution dur = solve_duration_only(p, SolverConfig::defaults(p));
  CHECK(dur.status == SolveStatus::infeasible);
  CHECK(dur.ee_bits_per_joule == 0.0);
}

TEST_CASE("dominant static power drives efficiency toward zero, not failure") {
  SystemParams p = reference_params();
  p.p_static_w = 1e9;
  p.r_min_bps = 0.0;
  const Solution sol = solve_joint(p, SolverConfig::defaults(p));
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.ee_bits_per_joule > 0.0);
  CHECK(sol.ee_bits_per_joule < 1e-4);
  for (size_t i = 1; i < sol.trace.size(); ++i) {
    CHECK(sol.trace[i].q_bits_per_joule >= sol.trace[i - 1].q_bits_per_joule);
  }
}

TEST_CASE("active rate constraint is met exactly and stays near the oracle") {
  SystemParams p = reference_params();
  p.p_static_w = 0.1;
  p.r_min_bps = 30000.0;
  const Solution sol = solve_joint(p, SolverConfig::defaults(p));
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(check_feasible(p, sol.alloc, ConstraintVariant::box_tau_max) ==
        Feasibility::feasible);
  CHECK(sol.rate_bps >= 30000.0 * (1.0 - 1e-9));

  const Solution ref = grid_search(p, ConstraintVariant::box_tau_max, {});
  CHECK(std::fabs(sol.ee_bits_per_joule - ref.ee_bits_per_joule) <=
        0.01 * ref.ee_bits_per_joule);
}

TEST_CASE("duration-only baseline matches a dense 1-D sweep") {
  for (double alpha : {0.01, 0.05, 0.09, 0.10}) {
    const SystemParams p = sweep_point(alpha, 100);
    const Solution dur = solve_duration_only(p, SolverConfig::defaults(p));
    REQUIRE(dur.status == SolveStatus::optimal);
    CHECK(dur.alloc.p_w == p.p1_max_w);
    const double best = sweep_max_ee(p, 1000000);
    CHECK(std::fabs(dur.ee_bits_per_joule - best) <= 1e-3 * best);
    CHECK(check_feasible(p, dur.alloc, ConstraintVariant::box_tau_max) ==
          Feasibility::feasible);
  }
}

TEST_CASE("joint optimization dominates the duration-only baseline") {
  for (auto [alpha, nt] : {std::pair<double, std::uint32_t>{0.01, 100},
                           {0.05, 100},
                           {0.09, 100},
                           {0.10, 100},
                           {0.04, 20},
                           {0.03, 50}}) {
    const SystemParams p = sweep_point(alpha, nt);
    const SolverConfig cfg = SolverConfig::defaults(p);
    const Solution joint = solve_joint(p, cfg);
    const Solution dur = solve_duration_only(p, cfg);
    REQUIRE(joint.status == SolveStatus::optimal);
    REQUIRE(dur.status == SolveStatus::optimal);
    CHECK(joint.ee_bits_per_joule >=
          dur.ee_bits_per_joule - 1e-9 * joint.ee_bits_per_joule);
  }
}

TEST_CASE("the problem depends on alpha and N_t only through their product") {
  // With theta = alpha both the SNR coefficient and tau_max are functions
  // of alpha * N_t, so these three configurations are the same problem.
  const Solution a = solve_joint(sweep_point(0.01, 100),
                                 SolverConfig::defaults(sweep_point(0.01, 100)));
  const Solution b = solve_joint(sweep_point(0.02, 50),
                                 SolverConfig::defaults(sweep_point(0.02, 50)));
  const Solution c = solve_joint(sweep_point(0.05, 20),
                                 SolverConfig::defaults(sweep_point(0.05, 20)));
  REQUIRE(a.status == SolveStatus::optimal);
  CHECK(a.ee_bits_per_joule == Approx(b.ee_bits_per_joule).epsilon(1e-9));
  CHECK(a.ee_bits_per_joule == Approx(c.ee_bits_per_joule).epsilon(1e-9));
}

TEST_CASE("stationarity holds at the reported optimum") {
  const SystemParams p = reference_params();
  const Solution sol = solve_joint(p, SolverConfig::defaults(p));
  REQUIRE(sol.status == SolveStatus::optimal);
  const double q = sol.ee_bits_per_joule;
  // p* sits on the cap (exempt); tau* is interior, so the duration
  // stationarity condition must hold with all multipliers at zero.
  REQUIRE(sol.alloc.tau_s < tau_max(p) * (1.0 - 1e-6));
  const double resid = tau_stationarity_residual(p, sol.alloc, q, DualState{});
  const double scale = std::max(
      std::fabs(p.slot_s * rate_deriv_tau(p, sol.alloc)),
      std::fabs(q * sol.alloc.p_w));
  CHECK(std::fabs(resid) <= 1e-6 * scale);
}

TEST_CASE("dinkelbach iterations are monotone and converge quickly") {
  for (double alpha : {0.01, 0.03, 0.05, 0.07, 0.10}) {
    const SystemParams p = sweep_point(alpha, 100);
    const SolverConfig cfg = SolverConfig::defaults(p);
    const Solution sol = solve_joint(p, cfg);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.outer_iterations <= 30);
    REQUIRE(!sol.trace.empty());
    CHECK(std::fabs(sol.trace.back().f_bits) <= cfg.epsilon_bits);
    for (size_t i = 1; i < sol.trace.size(); ++i) {
      CHECK(sol.trace[i].q_bits_per_joule >=
            sol.trace[i - 1].q_bits_per_joule);
      CHECK(sol.trace[i].f_bits <=
            sol.trace[i - 1].f_bits + 1e-9 * std::fabs(sol.trace[i - 1].f_bits) +
                1e-12);
    }
  }
}

TEST_CASE("highest achievable rate agrees with a million-point sweep") {
  SUBCASE("boundary maximum on a weak link") {
    const SystemParams p = sweep_point(0.01, 20);
    const double golden = max_achievable_rate(p, ConstraintVariant::box_tau_max);
    const double swept = sweep_max_rate(p, 1000000);
    CHECK(golden == Approx(swept).epsilon(1e-9));
    CHECK(std::fabs(golden - 2186.155) <= 1e-2);
    CHECK(std::fabs(golden - 2187.0) <= 0.01 * 2187.0);
  }
  SUBCASE("reference scenario peaks at the duration cap") {
    const SystemParams p = reference_params();
    const double golden = max_achievable_rate(p, ConstraintVariant::box_tau_max);
    CHECK(std::fabs(golden - 49830.55) <= 0.01);
    CHECK(golden == Approx(sweep_max_rate(p, 1000000)).epsilon(1e-9));
  }
  SUBCASE("zero when the log argument never reaches one") {
    SystemParams p = reference_params();
    p.alpha = p.theta = 1e-6;
    p.n_t = 10;
    CHECK(max_achievable_rate(p, ConstraintVariant::box_tau_max) == 0.0);
    CHECK(max_achievable_rate(p, ConstraintVariant::exact_harvest_cap) == 0.0);
  }
  SUBCASE("exact cap variant can do no better at full source power") {
    const SystemParams p = reference_params();
    const double box = max_achievable_rate(p, ConstraintVariant::box_tau_max);
    const double exact =
        max_achievable_rate(p, ConstraintVariant::exact_harvest_cap);
    CHECK(exact >= box * (1.0 - 1e-12));
  }
}

TEST_CASE("solver config validation") {
  const SystemParams p = reference_params();
  SolverConfig cfg = SolverConfig::defaults(p);
  CHECK(cfg.epsilon_bits == Approx(1e-6 * p.bandwidth_hz * p.slot_s));
  cfg.init_fraction = 1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = SolverConfig::defaults(p);
  cfg.step_mu = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
