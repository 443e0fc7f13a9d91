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

#ifndef WPCN_CHANNEL_HPP
#define WPCN_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wpcn/model.hpp"

// Monte Carlo validation of the hardened-rate approximation: seeded
// Rayleigh-fading draws, concentration of ||h||^2 / N_t around 1, and the
// relative gap between the exact and hardened rate expressions.
//
// Sampling is a pure function of (seed, sample index): every sample owns a
// splitmix64 stream derived from both, so statistics are reproducible and
// independent of any batching or worker count.
namespace wpcn {

struct ChannelSample {
  std::vector<std::complex<double>> h;  // downlink fading, CN(0,1) entries
  std::vector<std::complex<double>> g;  // uplink fading; equals h when reciprocal
  bool reciprocal = false;
};

struct HardeningStats {
  double mean_ratio = 0.0;  // sample mean of ||h||^2 / N_t
  double std_ratio = 0.0;   // sample standard deviation of the same
  std::uint32_t n_samples = 0;
};

struct RateGapStats {
  double mean_rel_gap = 0.0;  // mean of |exact - hardened| / exact
  double max_rel_gap = 0.0;
  std::uint32_t n_samples = 0;   // samples contributing to the statistics
  std::uint32_t n_excluded = 0;  // samples skipped for a zero exact rate
};

// One channel draw with i.i.d. CN(0,1) entries (each real component has
// variance 1/2), generated by a Box-Muller transform over a splitmix64
// uniform stream. Deterministic for a fixed (n_t, seed).
ChannelSample sample_channel(std::uint32_t n_t, std::uint64_t seed,
                             bool reciprocal);

// Mean and sample standard deviation of ||h||^2 / N_t over m independent
// draws (m >= 2) with per-sample seeds derived from `seed`.
HardeningStats hardening_stats(std::uint32_t n_t, std::uint32_t m,
                               std::uint64_t seed);

// Same statistics over caller-supplied ratios; the sampling path above is
// this plus sample_channel.
HardeningStats hardening_stats_from_ratios(std::span<const double> ratios);

// Relative gap between the exact rate (with sampled fading norms) and the
// hardened approximation at a fixed operating point, over m draws.
// Samples with a zero exact rate are excluded and counted.
RateGapStats rate_gap_stats(const SystemParams& params,
                            const Allocation& alloc, std::uint32_t m,
                            std::uint64_t seed);

}  // namespace wpcn

#endif  // WPCN_CHANNEL_HPP
