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

// Timings of the reference kernels against the optimized ones.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "abp/lattice.hpp"
#include "abp/montecarlo.hpp"

namespace {

double seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  const auto spec = abp::NeighborhoodSpec::anisotropic();
  std::printf("threads available: %d\n", omp_get_max_threads());

  std::printf("%-10s %-6s %12s %12s %8s\n", "closure", "p", "naive_s", "frontier_s", "same");
  for (int side : {64, 256}) {
    for (double p : {0.1, 0.2}) {
      abp::Stream stream(42, std::uint64_t(side));
      const auto c = abp::montecarlo::sample_configuration(abp::Rect::sized(side, side), p, stream);
      abp::Configuration a, b;
      const double naive = seconds([&] { a = abp::closure_naive(c, spec); });
      const double fast = seconds([&] { b = abp::closure(c, spec); });
      std::printf("%4dx%-5d %-6.2f %12.6f %12.6f %8s\n", side, side, p, naive, fast,
                  a == b ? "yes" : "NO");
    }
  }

  abp::montecarlo::TrialPlan plan;
  plan.p = 0.5;
  plan.region = abp::Rect::sized(40, 20);
  plan.event.name = "crossed";
  plan.trials = 2000;
  plan.seed = 7;
  abp::montecarlo::Estimate serial, parallel;
  const double ts = seconds([&] { serial = abp::montecarlo::estimate_event_serial(plan); });
  const double tp = seconds([&] { parallel = abp::montecarlo::estimate_event(plan); });
  std::printf("estimate crossed 40x20, %lld trials: serial %.3fs, openmp %.3fs, same=%s\n",
              static_cast<long long>(plan.trials), ts, tp,
              serial.successes == parallel.successes ? "yes" : "NO");
  return 0;
}
