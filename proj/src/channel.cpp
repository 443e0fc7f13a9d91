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

#include "wpcn/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpcn {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64: tiny seedable generator with 64-bit state; plenty for
// reproducible statistics.
std::uint64_t splitmix64(std::uint64_t& state) {
  return mix64(state += kGolden);
}

double uniform01(std::uint64_t& state) {
  // 53 mantissa bits, kept strictly positive so log() below stays finite.
  const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;
}

// One CN(0,1) draw (variance 1/2 per real component) via Box-Muller.
std::complex<double> complex_normal(std::uint64_t& state) {
  const double u1 = uniform01(state);
  const double u2 = uniform01(state);
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Starting state for the (seed, tag) substream. Both inputs go through the
// avalanche mix so streams for nearby seeds or consecutive sample indices
// land far apart and never share draws.
std::uint64_t stream_state(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed + kGolden) ^ mix64(tag + 0x5851f42d4c957f2dULL));
}

double norm2(const std::vector<std::complex<double>>& v) {
  double out = 0.0;
  for (const auto& z : v) out += std::norm(z);
  return out;
}

}  // namespace

ChannelSample sample_channel(std::uint32_t n_t, std::uint64_t seed,
                             bool reciprocal) {
  if (n_t < 1) throw std::invalid_argument("n_t must be >= 1");
  ChannelSample sample;
  sample.reciprocal = reciprocal;
  sample.h.resize(n_t);
  std::uint64_t hs = stream_state(seed, 0);
  for (auto& z : sample.h) z = complex_normal(hs);
  if (reciprocal) {
    sample.g = sample.h;
  } else {
    sample.g.resize(n_t);
    std::uint64_t gs = stream_state(seed, 1);
    for (auto& z : sample.g) z = complex_normal(gs);
  }
  return sample;
}

HardeningStats hardening_stats_from_ratios(std::span<const double> ratios) {
  if (ratios.size() < 2) {
    throw std::invalid_argument("need at least 2 samples");
  }
  double sum = 0.0;
  for (double r : ratios) sum += r;
  const double mean = sum / static_cast<double>(ratios.size());
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  HardeningStats stats;
  stats.mean_ratio = mean;
  stats.std_ratio = std::sqrt(ss / static_cast<double>(ratios.size() - 1));
  stats.n_samples = static_cast<std::uint32_t>(ratios.size());
  return stats;
}

HardeningStats hardening_stats(std::uint32_t n_t, std::uint32_t m,
                               std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("need at least 2 samples");
  std::vector<double> ratios(m);
  for (std::uint32_t k = 0; k < m; ++k) {
    const std::uint64_t sample_seed = stream_state(seed, k);
    const ChannelSample s = sample_channel(n_t, sample_seed, false);
    ratios[k] = norm2(s.h) / static_cast<double>(n_t);
  }
  return hardening_stats_from_ratios(ratios);
}

RateGapStats rate_gap_stats(const SystemParams& params,
                            const Allocation& alloc, std::uint32_t m,
                            std::uint64_t seed) {
  validate(params);
  validate(params, alloc);
  if (m < 1) throw std::invalid_argument("need at least 1 sample");
  const double hardened = avg_rate_hardened(params, alloc);
  RateGapStats stats;
  double sum = 0.0;
  for (std::uint32_t k = 0; k < m; ++k) {
    const std::uint64_t sample_seed = stream_state(seed, k);
    const ChannelSample s = sample_channel(params.n_t, sample_seed, false);
    const double exact =
        avg_rate_exact(params, alloc, norm2(s.h), norm2(s.g));
    if (!(exact > 0.0)) {
      ++stats.n_excluded;
      continue;
    }
    const double gap = std::fabs(exact - hardened) / exact;
    sum += gap;
    stats.max_rel_gap = std::max(stats.max_rel_gap, gap);
    ++stats.n_samples;
  }
  if (stats.n_samples > 0) {
    stats.mean_rel_gap = sum / static_cast<double>(stats.n_samples);
  }
  return stats;
}

}  // namespace wpcn
