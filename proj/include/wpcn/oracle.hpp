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

#ifndef WPCN_ORACLE_HPP
#define WPCN_ORACLE_HPP

#include <cstdint>

#include "wpcn/model.hpp"
#include "wpcn/solver.hpp"

namespace wpcn {

// Brute-force reference maximizer of the energy efficiency over a linear
// (p, tau) grid with local refinement. Slow by construction; used to
// cross-check the solver.
struct GridSpec {
  std::uint32_t n_p = 2001;
  std::uint32_t n_tau = 2001;
  std::uint32_t refine_levels = 2;
  double refine_factor = 0.05;
};

void validate(const GridSpec& grid);

// Evaluates every feasible grid cell over (0, P1_max] x (0, tau_upper],
// where tau_upper is tau_max for the box variant and just under T for the
// exact variant, then refines around the best cell refine_levels times
// with the window shrunk by refine_factor per level. Deterministic; ties
// break toward smaller p, then smaller tau. Returns Infeasible with
// ee = 0 when no point meets the rate requirement.
Solution grid_search(const SystemParams& params, ConstraintVariant variant,
                     const GridSpec& grid);

}  // namespace wpcn

#endif  // WPCN_ORACLE_HPP
