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

#ifndef WPCN_TESTS_TEST_UTIL_HPP
#define WPCN_TESTS_TEST_UTIL_HPP

#include <random>

#include "wpcn/model.hpp"

namespace wpcn_test {

// Random but physically sensible parameter draw for property tests.
inline wpcn::SystemParams random_params(std::mt19937_64& rng) {
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  wpcn::SystemParams p;
  p.bandwidth_hz = uni(1e3, 1e5);
  p.slot_s = uni(1e-3, 1e-2);
  p.eta = uni(0.2, 1.0);
  p.alpha = uni(0.005, 0.2);
  p.theta = uni(0.005, 0.2);
  p.noise_power_w = uni(0.2, 5.0);
  p.n_t = std::uniform_int_distribution<std::uint32_t>(2, 256)(rng);
  p.p_static_w = uni(0.05, 100.0);
  p.p1_max_w = uni(0.5, 50.0);
  p.p2_max_w = uni(0.5, 50.0);
  p.r_min_bps = 0.0;
  return p;
}

// Duration at which the hardened rate's log argument equals `target` for
// the given power.
inline double tau_for_arg(const wpcn::SystemParams& p, double p_w,
                          double target) {
  const double nt = static_cast<double>(p.n_t);
  const double kc =
      p.eta * p.alpha * p.theta * nt * nt / p.noise_power_w;
  return target * p.slot_s / (kc * p_w + target);
}

}  // namespace wpcn_test

#endif  // WPCN_TESTS_TEST_UTIL_HPP
