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

#include "abp/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "abp/analytic.hpp"

namespace abp::montecarlo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integer form of Stream::bernoulli: (bits >> 11) * 2^-53 < p.
std::uint64_t bernoulli_threshold(double p) {
  const double scaled = std::ldexp(p, 53);
  if (scaled >= 0x1.0p53) return std::uint64_t(1) << 53;
  return std::uint64_t(std::ceil(scaled));
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
}

std::int64_t count_successes(std::int64_t trials, int threads,
                             const std::function<bool(std::int64_t)>& trial) {
  std::int64_t hits = 0;
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : hits) num_threads(workers)
  for (std::int64_t t = 0; t < trials; ++t) hits += trial(t) ? 1 : 0;
  return hits;
}

std::string event_label(const EventSpec& e) {
  std::string label = e.name;
  if (e.name == "k_vert_crossed" || e.name == "crossed" || e.name == "A_k") {
    label += "(k=" + std::to_string(e.crossing.k) + ")";
  }
  return label;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double h = double(sorted.size() - 1) * q;
  const auto lo = std::size_t(std::floor(h));
  const double frac = h - double(lo);
  if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
  if (std::isinf(sorted[lo + 1])) return kInf;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// The origin's state after t steps depends only on sites within t steps of
// it, so growing windows give the full-box answer once the hit time is no
// larger than the window radius.
std::int64_t origin_time(const SiteField& field, double p, const Rect& box,
                         const NeighborhoodSpec& spec) {
  for (std::int64_t r = 8;; r *= 2) {
    const Rect window{int(std::max<std::int64_t>(box.a, -spec.reach() * r)),
                      int(std::min<std::int64_t>(box.b, spec.reach() * r)),
                      int(std::max<std::int64_t>(box.c, -r)), int(std::min<std::int64_t>(box.d, r))};
    const Configuration c = sample_configuration(window, p, field);
    const std::int64_t t = time_to_occupy(c, spec, {0, 0});
    if (window == box || (t != kNever && t <= r)) return t;
  }
}

}  // namespace

void TrialPlan::validate() const {
  require_probability(p);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!is_known_event(event.name)) throw std::invalid_argument("unknown event: " + event.name);
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

double Estimate::standard_error() const {
  return trials > 0 ? std::sqrt(p_hat * (1 - p_hat) / double(trials)) : 0.0;
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson interval needs 0 <= successes <= trials, trials >= 1");
  }
  const double n = double(trials);
  const double phat = double(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.low = 0.0;
  if (successes == trials) out.high = 1.0;
  out.low = std::min(out.low, phat);
  out.high = std::max(out.high, phat);
  return out;
}

Estimate make_estimate(std::string label, double p, const Rect& region, std::int64_t successes,
                       std::int64_t trials, std::uint64_t seed) {
  Estimate e;
  e.label = std::move(label);
  e.p = p;
  e.region = region;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = double(successes) / double(trials);
  const Interval ci = wilson_interval(successes, trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.seed = seed;
  return e;
}

Configuration sample_configuration(const Rect& region, double p, Stream& stream) {
  require_probability(p);
  Configuration c(region);
  const std::uint64_t threshold = bernoulli_threshold(p);
  for (auto& cell : c.cells()) cell = (stream.bits() >> 11) < threshold ? 1 : 0;
  return c;
}

Configuration sample_configuration(const Rect& region, double p, const SiteField& field) {
  require_probability(p);
  Configuration c(region);
  const std::uint64_t threshold = bernoulli_threshold(p);
  auto cells = c.cells();
  std::size_t i = 0;
  for (int n = region.c; n <= region.d; ++n) {
    for (int m = region.a; m <= region.b; ++m) cells[i++] = (field.bits(m, n) >> 11) < threshold ? 1 : 0;
  }
  return c;
}

Estimate estimate_event(const TrialPlan& plan) {
  plan.validate();
  const std::int64_t hits = count_successes(plan.trials, plan.threads, [&](std::int64_t t) {
    Stream stream(plan.seed, std::uint64_t(t));
    Configuration c = sample_configuration(plan.region, plan.p, stream);
    return evaluate_event(plan.event, c, plan.region, plan.spec);
  });
  return make_estimate(event_label(plan.event), plan.p, plan.region, hits, plan.trials, plan.seed);
}

Estimate estimate_event_serial(const TrialPlan& plan) {
  plan.validate();
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < plan.trials; ++t) {
    Stream stream(plan.seed, std::uint64_t(t));
    Configuration c = sample_configuration(plan.region, plan.p, stream);
    if (evaluate_event(plan.event, c, plan.region, plan.spec)) ++hits;
  }
  return make_estimate(event_label(plan.event), plan.p, plan.region, hits, plan.trials, plan.seed);
}

double exact_event_probability(const Rect& region, double p, const EventSpec& event,
                               const NeighborhoodSpec& spec) {
  require_probability(p);
  if (!is_known_event(event.name)) throw std::invalid_argument("unknown event: " + event.name);
  const std::int64_t sites = region.area();
  if (sites > kMaxExactSites) {
    throw std::invalid_argument("exact enumeration is capped at " + std::to_string(kMaxExactSites) +
                                " sites");
  }
  // Satisfying configurations counted by number of occupied sites, then
  // weighted once per count.
  std::vector<std::int64_t> by_count(std::size_t(sites) + 1, 0);
  Configuration c(region);
  const std::uint32_t states = std::uint32_t(1) << sites;
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    auto cells = c.cells();
    for (std::int64_t i = 0; i < sites; ++i) cells[std::size_t(i)] = (mask >> i) & 1u;
    if (evaluate_event(event, c, region, spec)) ++by_count[std::size_t(std::popcount(mask))];
  }
  double total = 0.0;
  for (std::int64_t j = 0; j <= sites; ++j) {
    if (by_count[std::size_t(j)] == 0) continue;
    total += double(by_count[std::size_t(j)]) * std::pow(p, double(j)) *
             std::pow(1.0 - p, double(sites - j));
  }
  return std::clamp(total, 0.0, 1.0);
}

std::vector<StageResult> staged_growth_experiment(double p, int k0, std::int64_t trials,
                                                  std::uint64_t seed, StageOptions options) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0,1]");
  if (k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(options.epsilon > 0 && options.epsilon < 1)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  const NeighborhoodSpec spec = NeighborhoodSpec::anisotropic();
  const double log_inv = -std::log(p);
  const int last = int(std::ceil(log_inv / 3.0 - std::log(double(k0))));

  auto checked = [](double v) {
    if (!(v <= double(std::numeric_limits<int>::max() / 4))) {
      throw std::overflow_error("stage geometry exceeds integer coordinates");
    }
    return int(v);
  };
  auto stage_rect = [&](int n) {
    return Rect{0, checked(std::ceil(std::exp(log_inv + 3.0 * n))), 0, checked(std::ceil(n / p))};
  };

  std::vector<StageResult> out;
  auto run = [&](StageResult stage, const std::function<bool(const Configuration&)>& event) {
    const std::uint64_t tag = out.size();
    const double sites = double(stage.region.area());
    if (sites > double(options.max_sites)) {
      stage.feasible = false;
      stage.note = "exceeds site guard";
    } else if (sites * double(trials) > options.max_work) {
      stage.feasible = false;
      stage.note = "exceeds work budget";
    }
    if (stage.feasible) {
      const std::int64_t hits = count_successes(trials, options.threads, [&](std::int64_t t) {
        Stream stream(seed, (tag << 40) | std::uint64_t(t));
        return event(sample_configuration(stage.region, p, stream));
      });
      stage.estimate = make_estimate(stage.name, p, stage.region, hits, trials, seed);
      if (stage.lower_bound) {
        const double b = *stage.lower_bound;
        const double sigma = std::sqrt(b * (1 - b) / double(trials));
        stage.meets_bound = stage.estimate.p_hat >= b - 3 * sigma;
      }
    } else {
      stage.estimate.label = stage.name;
      stage.estimate.p = p;
      stage.estimate.region = stage.region;
      stage.estimate.seed = seed;
    }
    out.push_back(std::move(stage));
  };

  const int seed_height = checked(std::floor(options.epsilon * log_inv / p));
  const Rect seed_rect = stage_rect(k0);

  auto stage = [](std::string name, Rect region, std::optional<Rect> inner = {}, int n = -1) {
    StageResult s;
    s.name = std::move(name);
    s.region = region;
    s.inner = inner;
    s.n = n;
    return s;
  };

  run(stage("E", {0, 1, 0, seed_height}), [](const Configuration& c) { return c.is_full(); });

  run(stage("F", {0, seed_rect.b, 0, seed_height}), [&](const Configuration& c) { return is_horizontally_traversable(c, c.window(), spec); });

  for (int n = k0; n <= last; ++n) {
    const Rect inner = stage_rect(n);
    const Rect outer = stage_rect(n + 1);
    StageResult s = stage("I_" + std::to_string(n), outer, inner, n);
    if (p < 1.0) {
      const auto bound = analytic::crossing_lower_bound(
          p, {double(inner.cols()), double(inner.rows())}, {double(outer.cols()), double(outer.rows())},
          options.epsilon);
      s.lower_bound = bound.value;
      if (!bound.in_regime) s.note = "bound outside regime";
    }
    run(s, [&](const Configuration& c) { return occurs_I(inner, outer, c, spec); });
  }

  const Rect top = stage_rect(std::max(last, k0 - 1) + 1);
  const int band = checked(std::ceil(options.epsilon / (p * p)));
  run(stage("H", {0, top.b, 0, band}), [&](const Configuration& c) {
    return is_vertically_traversable(c, c.window(), Direction::kNorth, spec);
  });

  const Rect wide{0, checked(2.0 * top.b), 0, top.d + band};
  run(stage("I_final", wide, top), [&](const Configuration& c) { return occurs_I(top, wide, c, spec); });

  run(stage("J", wide), [&](const Configuration& c) { return is_horizontally_traversable(c, c.window(), spec); });
  return out;
}

ThresholdSummary threshold_statistic(double p, int box_half_width, std::int64_t trials,
                                     std::uint64_t seed, int threads,
                                     const NeighborhoodSpec& spec) {
  require_probability(p);
  if (box_half_width < 0) throw std::invalid_argument("box half width must be >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Rect box{-box_half_width, box_half_width, -box_half_width, box_half_width};
  ThresholdSummary s;
  s.p = p;
  s.box_half_width = box_half_width;
  s.trials = trials;
  s.seed = seed;
  s.times.assign(std::size_t(trials), kNever);
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t t = 0; t < trials; ++t) {
    s.times[std::size_t(t)] = origin_time(SiteField(seed, std::uint64_t(t)), p, box, spec);
  }
  std::vector<double> sorted;
  sorted.reserve(s.times.size());
  for (std::int64_t t : s.times) {
    if (t == kNever) ++s.never_count;
    sorted.push_back(t == kNever ? kInf : double(t));
  }
  std::sort(sorted.begin(), sorted.end());
  s.never_fraction = double(s.never_count) / double(trials);
  s.median = quantile(sorted, 0.5);
  s.q1 = quantile(sorted, 0.25);
  s.q3 = quantile(sorted, 0.75);
  const double log_inv = -std::log(p);
  s.nu = log_inv > 0 ? p * std::log(s.median) / (log_inv * log_inv)
                     : std::numeric_limits<double>::quiet_NaN();
  return s;
}

ClaimReport verify_crossing_claim(int k, int x, const NeighborhoodSpec& spec, bool include_adjacent,
                                  std::size_t max_examples) {
  if (k < 1 || x < 0) throw std::invalid_argument("need k >= 1 and x >= 0");
  const std::int64_t sites = std::int64_t(x + 1) * k;
  if (sites > kMaxExactSites) {
    throw std::invalid_argument("(x+1)k exceeds the enumeration cap of " +
                                std::to_string(kMaxExactSites));
  }
  ClaimReport report;
  report.k = k;
  report.x = x;
  report.include_adjacent = include_adjacent;
  const Rect strip{0, x, 1, k};
  const Boundary outside{{Rect{0, x, 0, 0}, Rect{0, x, k + 1, k + 1}}};
  Configuration c(strip);
  const std::uint32_t states = std::uint32_t(1) << sites;
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    auto cells = c.cells();
    for (std::int64_t i = 0; i < sites; ++i) cells[std::size_t(i)] = (mask >> i) & 1u;
    ++report.configurations;
    if (!strip_has_crossing_path(c, outside, spec)) continue;
    ++report.crossed;
    std::vector<std::size_t> sizes;
    for (const auto& comp : weakly_connected_components(c, spec, include_adjacent)) {
      sizes.push_back(comp.size());
    }
    std::sort(sizes.rbegin(), sizes.rend());
    std::size_t gain = 0;
    for (std::size_t i = 0; i < sizes.size() && i < std::size_t(k - 1); ++i) gain += sizes[i] - 1;
    if (gain >= std::size_t(k - 1)) continue;
    ++report.counterexamples;
    if (report.examples.size() < max_examples) report.examples.push_back(c);
  }
  return report;
}

}  // namespace abp::montecarlo
