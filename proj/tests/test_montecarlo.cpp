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

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "abp/analytic.hpp"
#include "abp/montecarlo.hpp"
#include "oracles.hpp"

namespace mc = abp::montecarlo;
using abp::Configuration;
using abp::EventSpec;
using abp::NeighborhoodSpec;
using abp::Rect;
using abp::Site;

namespace {

EventSpec event_for(std::string_view name, const Rect& r) {
  EventSpec e{std::string(name), {2}, {}};
  if (name == "I" || name == "A_k") e.inner = Rect{r.a, r.a, r.c, r.c};
  return e;
}

bool needs_height(std::string_view name) {
  return name == "k_vert_crossed" || name == "crossed" || name == "A_k";
}

}  // namespace

TEST_CASE("stream is a pure function of seed and id") {
  abp::Stream a(5, 9), b(5, 9), c(5, 10), d(6, 9);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  CHECK(x != d.uniform());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("sampling") {
  abp::Stream s(1, 0);
  CHECK(mc::sample_configuration(Rect::sized(30, 30), 0.0, s).count() == 0);
  CHECK(mc::sample_configuration(Rect::sized(30, 30), 1.0, s).is_full());
  abp::Stream big(2, 0);
  const auto c = mc::sample_configuration(Rect::sized(1000, 100), 0.3, big);
  const double n = 1e5;
  CHECK(std::abs(double(c.count()) - 0.3 * n) <= 3 * std::sqrt(n * 0.3 * 0.7));
  abp::Stream again(2, 0);
  CHECK(mc::sample_configuration(Rect::sized(1000, 100), 0.3, again) == c);
}

TEST_CASE("sampling thresholds the same uniforms as Stream::bernoulli") {
  abp::Stream a(3, 4), b(3, 4);
  const Rect r = Rect::sized(50, 20);
  const auto c = mc::sample_configuration(r, 0.37, a);
  for (std::size_t i = 0; i < c.cells().size(); ++i) CHECK(bool(c.cells()[i]) == b.bernoulli(0.37));
}

TEST_CASE("wilson interval") {
  const auto i = mc::wilson_interval(0, 10);
  CHECK(i.low == 0.0);
  CHECK(i.high > 0.0);
  const auto j = mc::wilson_interval(10, 10);
  CHECK(j.high == 1.0);
  const auto k = mc::wilson_interval(40, 100);
  CHECK(k.low == doctest::Approx(0.3094).epsilon(1e-3));
  CHECK(k.high == doctest::Approx(0.4980).epsilon(1e-3));
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const auto n = std::uniform_int_distribution<std::int64_t>(1, 500)(rng);
    const auto s = std::uniform_int_distribution<std::int64_t>(0, n)(rng);
    const auto e = mc::make_estimate("x", 0.5, Rect{}, s, n, 1);
    CHECK(0.0 <= e.ci_low);
    CHECK(e.ci_low <= e.p_hat);
    CHECK(e.p_hat <= e.ci_high);
    CHECK(e.ci_high <= 1.0);
  }
  CHECK_THROWS_AS(mc::wilson_interval(3, 2), std::invalid_argument);
}

TEST_CASE("estimate trivial cases and errors") {
  mc::TrialPlan plan;
  plan.p = 1.0;
  plan.region = Rect::sized(10, 5);
  plan.event.name = "horiz_traversable";
  plan.trials = 100;
  plan.seed = 7;
  CHECK(mc::estimate_event(plan).p_hat == 1.0);
  plan.p = 0.0;
  plan.event.name = "north_traversable";
  CHECK(mc::estimate_event(plan).p_hat == 0.0);
  plan.event.name = "bogus";
  CHECK_THROWS_AS(mc::estimate_event(plan), std::invalid_argument);
  plan.event.name = "crossed";
  plan.trials = 0;
  CHECK_THROWS_AS(mc::estimate_event(plan), std::invalid_argument);
}

TEST_CASE("estimate is identical across thread counts and the serial reference") {
  mc::TrialPlan plan;
  plan.p = 0.45;
  plan.region = Rect::sized(12, 6);
  plan.event.name = "crossed";
  plan.trials = 3000;
  plan.seed = 99;
  const auto serial = mc::estimate_event_serial(plan);
  for (int threads : {1, 2, 3}) {
    plan.threads = threads;
    const auto e = mc::estimate_event(plan);
    CHECK(e.successes == serial.successes);
    CHECK(e.ci_low == serial.ci_low);
  }
}

TEST_CASE("property: common random numbers give monotone estimates") {
  std::mt19937_64 rng(52);
  for (auto name : abp::event_names()) {
    for (int t = 0; t < 5; ++t) {
      const Rect r = oracle::random_rect(rng, 30, needs_height(name) ? 3 : 1);
      mc::TrialPlan plan;
      plan.region = r;
      plan.event = event_for(name, r);
      plan.trials = 300;
      plan.seed = rng();
      double previous = -1;
      for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        plan.p = p;
        const double now = mc::estimate_event(plan).p_hat;
        CHECK(now >= previous);
        previous = now;
      }
    }
  }
}

TEST_CASE("exact probability") {
  SUBCASE("uniform measure counts satisfying configurations") {
    const Rect r = Rect::sized(3, 2);
    int satisfying = 0;
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      // Horizontally traversable iff some column is occupied.
      bool any_column = false;
      for (int m = 0; m < 3; ++m) any_column = any_column || (mask >> m & 1u) || (mask >> (3 + m) & 1u);
      satisfying += any_column ? 1 : 0;
    }
    CHECK(mc::exact_event_probability(r, 0.5, {"horiz_traversable", {2}, {}}) == satisfying / 64.0);
  }
  SUBCASE("three columns match the no-gap recursion") {
    for (int y = 1; y <= 8; ++y) {
      for (double p : {0.05, 0.2, 0.6}) {
        const double u = abp::analytic::column_occupancy(p, y);
        const double exact = mc::exact_event_probability(Rect::sized(3, y), p, {"horiz_traversable", {2}, {}});
        CHECK(exact == doctest::Approx(1 - std::pow(1 - u, 3)).epsilon(1e-12));
        CHECK(exact == doctest::Approx(abp::analytic::no_triple_gap_exact(u, 3)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("wider strips match the no-gap recursion") {
    const double p = 0.15;
    const double u = abp::analytic::column_occupancy(p, 2);
    CHECK(mc::exact_event_probability(Rect::sized(10, 2), p, {"horiz_traversable", {2}, {}}) ==
          doctest::Approx(abp::analytic::no_triple_gap_exact(u, 10)).epsilon(1e-12));
  }
  SUBCASE("single line north traversability with the row above") {
    const double p = 0.3;
    const int x = 6;
    // Window holds the line and the row above; only the line is tested.
    double total = 0;
    const Rect window = Rect::sized(x, 2);
    Configuration c(window);
    for (std::uint32_t mask = 0; mask < (1u << (2 * x)); ++mask) {
      for (int i = 0; i < 2 * x; ++i) c.cells()[std::size_t(i)] = mask >> i & 1u;
      if (!abp::is_vertically_traversable(c, Rect{0, x - 1, 0, 0}, abp::Direction::kNorth)) continue;
      total += std::pow(p, std::popcount(mask)) * std::pow(1 - p, 2 * x - std::popcount(mask));
    }
    CHECK(abp::analytic::single_line_probability(p, x) == doctest::Approx(total).epsilon(1e-12));
  }
  SUBCASE("monotone in p") {
    for (auto name : abp::event_names()) {
      const Rect r = Rect::sized(3, 3);
      double previous = -1;
      for (int i = 0; i <= 10; ++i) {
        const double now = mc::exact_event_probability(r, i / 10.0, event_for(name, r));
        CHECK(now >= previous - 1e-15);
        previous = now;
      }
    }
  }
  CHECK_THROWS_AS(mc::exact_event_probability(Rect::sized(5, 5), 0.5, {"crossed", {2}, {}}),
                  std::invalid_argument);
}

TEST_CASE("property: estimates agree with exact enumeration") {
  std::mt19937_64 rng(53);
  int total = 0, within = 0;
  for (auto name : abp::event_names()) {
    for (int t = 0; t < 6; ++t) {
      const Rect r = oracle::random_rect(rng, 12, needs_height(name) ? 3 : 1);
      for (double p : {0.2, 0.5, 0.8}) {
        mc::TrialPlan plan;
        plan.p = p;
        plan.region = r;
        plan.event = event_for(name, r);
        plan.trials = 4000;
        plan.seed = rng();
        const double exact = mc::exact_event_probability(r, p, plan.event);
        const auto e = mc::estimate_event(plan);
        const double se = std::sqrt(exact * (1 - exact) / double(plan.trials));
        ++total;
        if (std::abs(e.p_hat - exact) <= 3 * se) ++within;
      }
    }
  }
  CHECK(double(within) >= 0.97 * total);
}

TEST_CASE("staged growth") {
  SUBCASE("p = 1 makes every stage certain") {
    const auto stages = mc::staged_growth_experiment(1.0, 1, 20, 3);
    REQUIRE_FALSE(stages.empty());
    for (const auto& s : stages) {
      REQUIRE(s.feasible);
      CHECK(s.estimate.p_hat == 1.0);
    }
  }
  SUBCASE("stage list and feasibility guard") {
    mc::StageOptions options;
    options.max_work = 5e6;
    const auto stages = mc::staged_growth_experiment(0.08, 1, 20, 3, options);
    std::vector<std::string> names;
    for (const auto& s : stages) names.push_back(s.name);
    CHECK(names == std::vector<std::string>{"E", "F", "I_1", "H", "I_final", "J"});
    CHECK(stages[2].lower_bound.has_value());
    CHECK(stages[2].inner == abp::analytic::growth_schedule(0.08, 1)[0].rect());
    CHECK_FALSE(stages[4].feasible);
    CHECK(stages[4].note == "exceeds work budget");
  }
  SUBCASE("paired comparison across p at fixed geometry") {
    // Same seed, same region: frequencies follow the coupling.
    mc::TrialPlan plan;
    plan.region = Rect::sized(40, 6);
    plan.event.name = "horiz_traversable";
    plan.trials = 500;
    plan.seed = 11;
    plan.p = 0.05;
    const double low = mc::estimate_event(plan).p_hat;
    plan.p = 0.1;
    CHECK(mc::estimate_event(plan).p_hat >= low);
  }
}

TEST_CASE("threshold statistic") {
  SUBCASE("p = 1") {
    const auto s = mc::threshold_statistic(1.0, 5, 10, 1);
    CHECK(s.median == 0.0);
    CHECK(s.never_count == 0);
    for (auto t : s.times) CHECK(t == 0);
  }
  SUBCASE("occupied origin gives zero time") {
    const auto s = mc::threshold_statistic(0.3, 10, 200, 4);
    for (std::int64_t trial = 0; trial < 200; ++trial) {
      const abp::SiteField field(4, std::uint64_t(trial));
      const auto c = mc::sample_configuration(Rect{-10, 10, -10, 10}, 0.3, field);
      if (c.occupied({0, 0})) CHECK(s.times[std::size_t(trial)] == 0);
      else CHECK(s.times[std::size_t(trial)] != 0);
    }
  }
  SUBCASE("matches the full box evaluated directly") {
    const auto spec = NeighborhoodSpec::anisotropic(2);
    for (double p : {0.08, 0.15, 0.3}) {
      const int half = 60;
      const auto s = mc::threshold_statistic(p, half, 40, 21);
      for (std::int64_t trial = 0; trial < 40; ++trial) {
        const abp::SiteField field(21, std::uint64_t(trial));
        const auto c = mc::sample_configuration(Rect{-half, half, -half, half}, p, field);
        CHECK(s.times[std::size_t(trial)] == abp::time_to_occupy(c, spec, {0, 0}));
      }
    }
  }
  SUBCASE("never fraction is nonincreasing in p") {
    double previous = 2;
    for (double p : {0.02, 0.05, 0.1, 0.2, 0.4}) {
      const auto s = mc::threshold_statistic(p, 12, 300, 9);
      CHECK(s.never_fraction <= previous);
      previous = s.never_fraction;
    }
  }
  SUBCASE("quantiles and normalization") {
    const auto s = mc::threshold_statistic(0.2, 40, 51, 2);
    CHECK(s.q1 <= s.median);
    CHECK(s.median <= s.q3);
    const double L = std::log(1 / 0.2);
    CHECK(s.nu == doctest::Approx(0.2 * std::log(s.median) / (L * L)));
  }
}

TEST_CASE("crossing claim") {
  const auto spec2 = NeighborhoodSpec::anisotropic(2);
  for (int x = 0; x <= 3; ++x) {
    const auto r = mc::verify_crossing_claim(2, x, spec2);
    CHECK(r.configurations == (std::int64_t(1) << (2 * (x + 1))));
    CHECK(r.counterexamples == 0);
    CHECK(r.crossed > 0);
  }
  SUBCASE("only shared-neighborhood pairs: a vertical pair is a counterexample") {
    const auto r = mc::verify_crossing_claim(2, 2, spec2, false);
    CHECK(r.counterexamples > 0);
    bool vertical_pair = false;
    for (const auto& c : r.examples) {
      if (c.count() == 2) {
        auto s = c.sites();
        vertical_pair = vertical_pair || (s[0].m == s[1].m && s[1].n == s[0].n + 1);
      }
    }
    CHECK(vertical_pair);
  }
  CHECK_THROWS_AS(mc::verify_crossing_claim(3, 8, NeighborhoodSpec::anisotropic(3)), std::invalid_argument);
}
