// Copyright 2026 The abp Authors
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

#ifndef ABP_MONTECARLO_HPP_
#define ABP_MONTECARLO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abp/events.hpp"
#include "abp/lattice.hpp"
#include "abp/rng.hpp"

namespace abp::montecarlo {

inline constexpr int kMaxExactSites = 24;
inline constexpr double kWilsonZ = 1.959963984540054;

struct TrialPlan {
  double p = 0.5;
  Rect region;
  EventSpec event;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  NeighborhoodSpec spec = NeighborhoodSpec::anisotropic();
  /// Worker count; 0 keeps the OpenMP default.
  int threads = 0;

  /// Throws std::invalid_argument for out-of-domain fields.
  void validate() const;
};

struct Estimate {
  std::string label;
  double p = 0;
  Rect region;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;

  double standard_error() const;
};

struct Interval {
  double low = 0;
  double high = 1;
};

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kWilsonZ);

/// Fills the estimate fields derived from a success count.
Estimate make_estimate(std::string label, double p, const Rect& region, std::int64_t successes,
                       std::int64_t trials, std::uint64_t seed);

/// I.i.d. Bernoulli(p) occupancy over region, drawn in row-major order.
Configuration sample_configuration(const Rect& region, double p, Stream& stream);
Configuration sample_configuration(const Rect& region, double p, const SiteField& field);

/// Trial i uses Stream(seed, i), so the result does not depend on the
/// thread count.
Estimate estimate_event(const TrialPlan& plan);

/// Single-threaded reference for estimate_event.
Estimate estimate_event_serial(const TrialPlan& plan);

/// Exact probability by enumerating all 2^sites configurations of region.
/// Throws std::invalid_argument above kMaxExactSites sites.
double exact_event_probability(const Rect& region, double p, const EventSpec& event,
                               const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

struct StageOptions {
  /// Scale of the seed strip height epsilon (1/p) log(1/p).
  double epsilon = 0.25;
  /// Largest stage rectangle that is simulated.
  std::int64_t max_sites = 4'000'000;
  /// Largest trials * sites budget per stage.
  double max_work = 1.5e9;
  int threads = 0;
};

struct StageResult {
  std::string name;
  /// Schedule index for the I(R_n, R_{n+1}) stages, -1 otherwise.
  int n = -1;
  Rect region;
  std::optional<Rect> inner;
  bool feasible = true;
  std::string note;
  Estimate estimate;
  std::optional<double> lower_bound;
  /// frequency >= lower_bound - 3 sigma, sigma taken at the bound.
  std::optional<bool> meets_bound;
};

std::vector<StageResult> staged_growth_experiment(double p, int k0, std::int64_t trials,
                                                  std::uint64_t seed, StageOptions options = {});

struct ThresholdSummary {
  double p = 0;
  int box_half_width = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t never_count = 0;
  double never_fraction = 0;
  /// Quantiles of the occupation time; infinity when they fall on NEVER.
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  /// p log(median) / log(1/p)^2.
  double nu = 0;
  /// Per-trial times in trial order, kNever when the origin stays vacant.
  std::vector<std::int64_t> times;
};

ThresholdSummary threshold_statistic(double p, int box_half_width, std::int64_t trials,
                                     std::uint64_t seed, int threads = 0,
                                     const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

struct ClaimReport {
  int k = 2;
  int x = 0;
  bool include_adjacent = true;
  std::int64_t configurations = 0;
  std::int64_t crossed = 0;
  std::int64_t counterexamples = 0;
  /// Up to max_examples counterexamples, as configurations on the strip.
  std::vector<Configuration> examples;
};

/// Enumerates the strip [0,x] x [1,k] with rows 0 and k+1 full. For every
/// configuration with a top-to-bottom path in the closure, looks for at most
/// k-1 disjoint weakly connected sets with sum of (size - 1) >= k - 1.
/// With include_adjacent, N-adjacent sites also count as weakly connected.
ClaimReport verify_crossing_claim(int k, int x, const NeighborhoodSpec& spec,
                                  bool include_adjacent = true, std::size_t max_examples = 16);

}  // namespace abp::montecarlo

#endif  // ABP_MONTECARLO_HPP_
