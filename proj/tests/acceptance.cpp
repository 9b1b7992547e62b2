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

// Acceptance run: prints one PASS/FAIL line per criterion and writes the
// experiment outputs into the directory given as the first argument.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abp/analytic.hpp"
#include "abp/decomposition.hpp"
#include "abp/montecarlo.hpp"
#include "abp/serialize.hpp"
#include "abp/variational.hpp"

namespace fs = std::filesystem;
namespace an = abp::analytic;
namespace mc = abp::montecarlo;
using abp::format_real;
using abp::Rect;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome sandwich() {
  std::vector<double> us{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  int checked = 0, violations = 0;
  for (double u : us) {
    const double la = an::log_alpha(u);
    for (std::int64_t x = 3; x <= 200; ++x) {
      const double lp = an::log_no_triple_gap_exact(u, x);
      ++checked;
      if (!(double(x) * la <= lp && lp <= double(x - 2) * la)) ++violations;
    }
  }
  return {violations == 0, std::to_string(checked) + " pairs, " + std::to_string(violations) + " violations"};
}

Outcome asymptotics() {
  std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> ratios;
  std::string detail = "ratios";
  for (double d : deltas) {
    ratios.push_back(an::log_alpha(1 - d) / -(d * d * d));
    detail += " " + format_real(ratios.back());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    decreasing = decreasing && std::abs(ratios[i] - 1) < std::abs(ratios[i - 1] - 1);
  }
  const bool in_band = ratios[2] >= 0.8 && ratios[2] <= 1.2;
  return {in_band && decreasing, detail};
}

// Monte Carlo against enumeration for every event; writes one CSV row per
// comparison. Returns the number of comparisons outside 3 standard errors.
struct OracleRun {
  int comparisons = 0;
  int outside = 0;
  double worst_z = 0;
  int closure_mismatches = 0;
};

OracleRun run_oracle_equivalence(const fs::path& out_path, int threads) {
  OracleRun run;
  std::ostringstream csv;
  csv << "event,p,dims,inner,exact,p_hat,se,z\n";
  std::mt19937_64 rng(1);
  std::uint64_t plan_id = 0;
  for (auto name : abp::event_names()) {
    const bool tall = name == "k_vert_crossed" || name == "crossed" || name == "A_k";
    for (int i = 0; i < 50; ++i) {
      Rect r;
      for (;;) {
        const int rows = std::uniform_int_distribution<int>(tall ? 3 : 1, 12)(rng);
        const int cols = std::uniform_int_distribution<int>(1, 12 / rows)(rng);
        if (cols >= 1) {
          r = Rect::sized(cols, rows);
          break;
        }
      }
      abp::EventSpec event{std::string(name), {2}, {}};
      if (name == "I" || name == "A_k") {
        const int a = std::uniform_int_distribution<int>(r.a, r.b)(rng);
        const int b = std::uniform_int_distribution<int>(a, r.b)(rng);
        const int c = std::uniform_int_distribution<int>(r.c, r.d)(rng);
        const int d = std::uniform_int_distribution<int>(c, r.d)(rng);
        event.inner = Rect{a, b, c, d};
      }
      for (double p : {0.2, 0.5, 0.8}) {
        mc::TrialPlan plan;
        plan.p = p;
        plan.region = r;
        plan.event = event;
        plan.trials = 10000;
        plan.seed = abp::mix64(++plan_id);
        plan.threads = threads;
        const double exact = mc::exact_event_probability(r, p, event);
        const auto e = mc::estimate_event(plan);
        const double se = std::sqrt(exact * (1 - exact) / double(plan.trials));
        const double diff = std::abs(e.p_hat - exact);
        const double z = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
        ++run.comparisons;
        if (!(diff <= 3 * se)) ++run.outside;
        run.worst_z = std::max(run.worst_z, z);
        csv << name << ',' << format_real(p) << ',' << abp::format_dims(r) << ','
            << (event.inner ? abp::format_dims(*event.inner) : "") << ',' << format_real(exact) << ','
            << format_real(e.p_hat) << ',' << format_real(se) << ',' << format_real(z) << '\n';
      }
    }
  }
  const auto spec = abp::NeighborhoodSpec::anisotropic();
  for (int i = 0; i < 1000; ++i) {
    const int cols = std::uniform_int_distribution<int>(1, 40)(rng);
    const int rows = std::uniform_int_distribution<int>(1, 40)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    abp::Stream stream(2, std::uint64_t(i));
    const auto c = mc::sample_configuration(Rect::sized(cols, rows), p, stream);
    if (!(abp::closure(c, spec) == abp::closure_naive(c, spec))) ++run.closure_mismatches;
  }
  csv << "closure_configurations,1000,closure_mismatches," << run.closure_mismatches << '\n';
  write_file(out_path, csv.str());
  return run;
}

Outcome oracle_equivalence(const fs::path& dir) {
  const auto r = run_oracle_equivalence(dir / "oracle_equivalence.csv", 0);
  return {r.outside == 0 && r.closure_mismatches == 0,
          std::to_string(r.comparisons) + " comparisons, " + std::to_string(r.outside) +
              " outside 3 SE (max z " + format_real(r.worst_z) + "); closure mismatches " +
              std::to_string(r.closure_mismatches) + "/1000"};
}

Outcome variational_limit() {
  const bool exact = abp::variational::limit_integral(0.0, 2) == 1.0 / 6.0;
  std::vector<double> gaps;
  std::string detail = "|lambda - 1/6|";
  for (double p : {1e-4, 1e-6, 1e-8}) {
    abp::variational::PathConstraints pc{.p = p, .T = 0.01, .grid_dX = 0.0025, .grid_dY = 0.0025, .X_max = 2.5};
    gaps.push_back(std::abs(abp::variational::lambda_T(pc).value - 1.0 / 6.0));
    detail += " " + format_real(gaps.back());
  }
  const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {exact && decreasing && gaps[2] <= 0.05,
          detail + (exact ? "; limit_integral(0,2) == 1/6" : "; limit_integral(0,2) != 1/6")};
}

Outcome crossing_claim() {
  std::int64_t configurations = 0, crossed = 0, counterexamples = 0;
  for (auto [k, max_x] : {std::pair{2, 4}, std::pair{3, 3}}) {
    for (int x = 0; x <= max_x; ++x) {
      const auto r = mc::verify_crossing_claim(k, x, abp::NeighborhoodSpec::anisotropic(k));
      configurations += r.configurations;
      crossed += r.crossed;
      counterexamples += r.counterexamples;
    }
  }
  return {counterexamples == 0, std::to_string(configurations) + " configurations, " +
                                    std::to_string(crossed) + " crossed, " +
                                    std::to_string(counterexamples) + " counterexamples"};
}

Outcome spanning_soundness() {
  namespace de = abp::decomposition;
  std::mt19937_64 rng(6);
  const auto spec = abp::NeighborhoodSpec::anisotropic();
  int failures = 0;
  std::string first_failure;
  for (int i = 0; i < 500; ++i) {
    const int cols = std::uniform_int_distribution<int>(1, 20)(rng);
    const int rows = std::uniform_int_distribution<int>(1, 20)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    abp::Stream stream(6, std::uint64_t(i));
    const auto c = mc::sample_configuration(Rect::sized(cols, rows), p, stream);
    try {
      const auto trace = de::disjoint_spanning(c, spec, {true});
      de::verify_trace(trace, c, spec);
      abp::Configuration all(c.window());
      for (int id : trace.final_sets) {
        for (abp::Site s : trace.all_sets[std::size_t(id)].sites) all.set(s);
      }
      if (!(all == abp::closure(c, spec))) throw de::InvariantViolation("final union differs from closure");
    } catch (const de::InvariantViolation& e) {
      if (failures++ == 0) first_failure = e.what();
    }
  }
  return {failures == 0, "500 configurations, " + std::to_string(failures) + " failures" +
                             (first_failure.empty() ? "" : " (" + first_failure + ")")};
}

struct StageRun {
  int checked = 0;
  int below = 0;
  std::string detail;
};

StageRun run_stage_bound(const fs::path& out_path, int threads) {
  mc::StageOptions options;
  options.threads = threads;
  const auto stages = mc::staged_growth_experiment(0.08, 1, 10000, 8, options);
  StageRun run;
  std::ostringstream csv;
  csv << "stage,n,dims,feasible,note,trials,successes,p_hat,lower_bound,meets_bound\n";
  for (const auto& s : stages) {
    csv << s.name << ',' << s.n << ',' << abp::format_dims(s.region) << ',' << s.feasible << ','
        << s.note << ',' << s.estimate.trials << ',' << s.estimate.successes << ','
        << format_real(s.estimate.p_hat) << ',' << (s.lower_bound ? format_real(*s.lower_bound) : "")
        << ',' << (s.meets_bound ? (*s.meets_bound ? "true" : "false") : "") << '\n';
    if (s.n >= 1 && s.n <= 4) {
      if (!s.feasible) {
        ++run.below;
        run.detail += " " + s.name + " infeasible";
        continue;
      }
      ++run.checked;
      if (!s.meets_bound.value_or(false)) ++run.below;
      run.detail += " " + s.name + " freq " + format_real(s.estimate.p_hat) + " vs bound " +
                    format_real(s.lower_bound.value_or(NAN)) + (s.note.empty() ? "" : " (" + s.note + ")");
    }
  }
  write_file(out_path, csv.str());
  return run;
}

Outcome stage_bound(const fs::path& dir) {
  const auto r = run_stage_bound(dir / "staged_growth.csv", 0);
  return {r.checked > 0 && r.below == 0, std::to_string(r.checked) + " I-stages;" + r.detail};
}

constexpr std::int64_t kThresholdTrials = 2000;

std::vector<double> run_threshold(const fs::path& out_path, int threads) {
  std::ostringstream csv;
  csv << "p,box_half_width,trials,median,q1,q3,never_fraction,nu\n";
  std::vector<double> nus;
  for (double p : {0.3, 0.2, 0.15, 0.1}) {
    const auto s = mc::threshold_statistic(p, 1024, kThresholdTrials, 8, threads);
    nus.push_back(s.nu);
    csv << format_real(p) << ",1024," << kThresholdTrials << ',' << format_real(s.median) << ','
        << format_real(s.q1) << ','
        << format_real(s.q3) << ',' << format_real(s.never_fraction) << ',' << format_real(s.nu) << '\n';
  }
  write_file(out_path, csv.str());
  return nus;
}

Outcome threshold_trend(const fs::path& dir) {
  const auto nus = run_threshold(dir / "threshold.csv", 0);
  bool decreasing = true;
  std::string detail = "nu over p = 0.3, 0.2, 0.15, 0.1:";
  for (std::size_t i = 0; i < nus.size(); ++i) {
    detail += " " + format_real(nus[i]);
    if (i > 0) decreasing = decreasing && nus[i] < nus[i - 1];
  }
  return {decreasing, detail};
}

Outcome determinism(const fs::path& dir) {
  run_oracle_equivalence(dir / "oracle_equivalence.repeat.csv", 2);
  run_stage_bound(dir / "staged_growth.repeat.csv", 2);
  run_threshold(dir / "threshold.repeat.csv", 2);
  int identical = 0;
  std::string detail;
  for (const char* stem : {"oracle_equivalence", "staged_growth", "threshold"}) {
    const std::string a = read_file(dir / (std::string(stem) + ".csv"));
    const std::string b = read_file(dir / (std::string(stem) + ".repeat.csv"));
    const bool same = !a.empty() && a == b;
    identical += same ? 1 : 0;
    detail += std::string(" ") + stem + (same ? " identical" : " DIFFERS");
  }
  return {identical == 3, detail.substr(1)};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  fs::create_directories(dir);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "alpha sandwich", 1, sandwich},
      {2, "alpha asymptotics", 1, asymptotics},
      {3, "oracle equivalence", 120, [&] { return oracle_equivalence(dir); }},
      {4, "variational limit", 60, variational_limit},
      {5, "crossing claim", 60, crossing_claim},
      {6, "disjoint spanning soundness", 60, spanning_soundness},
      {7, "stage lower bound", 600, [&] { return stage_bound(dir); }},
      {8, "threshold trend", 900, [&] { return threshold_trend(dir); }},
      {9, "determinism", 1800, [&] { return determinism(dir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double took = seconds_since(start);
    const bool in_time = took <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("CRITERION %d %s: %s [%.2fs of %.0fs] %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                took, c.budget_s, o.detail.c_str(), in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
