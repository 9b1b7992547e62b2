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

#include "abp/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>

namespace abp::variational {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPowerFloor = 1e-300;

// p^{1 - X + 3Y} / log(1/p)^2, floored to 0.
double boundary_term(double log_inv, double X, double Y) {
  const double power = std::exp(-log_inv * (1.0 - X + 3.0 * Y));
  return power < kPowerFloor ? 0.0 : power / (log_inv * log_inv);
}

struct Pred {
  std::int32_t layer = -1;
  std::int32_t col = -1;
};

}  // namespace

PathConstraints PathConstraints::with_default_grid(double p, double T) {
  return {.p = p, .T = T, .grid_dX = T / 4, .grid_dY = T / 4, .X_max = 2.5};
}

void PathConstraints::validate() const {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
  if (!(T > 0)) throw std::invalid_argument("T must be positive");
  if (!(grid_dX > 0 && grid_dY > 0)) throw std::invalid_argument("grid steps must be positive");
  if (!(X_max >= 0)) throw std::invalid_argument("X_max must be nonnegative");
}

double w_normalized(double p, NormalizedRect from, NormalizedRect to) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
  if (to.X < from.X || to.Y < from.Y) throw std::invalid_argument("w_normalized needs from <= to");
  const double log_inv = -std::log(p);
  return boundary_term(log_inv, to.X, to.Y) - boundary_term(log_inv, from.X, to.Y) +
         (to.Y - from.Y) * std::min(2.0 - to.X, 1.0);
}

LambdaResult lambda_T(const PathConstraints& pc) {
  pc.validate();
  const double log_inv = -std::log(pc.p);
  const double slack = 1e-9;
  const std::size_t cols = std::size_t(std::floor(pc.X_max / pc.grid_dX + slack)) + 1;
  const auto first_terminal = std::size_t(std::ceil((1.0 / 3.0) / pc.grid_dY - slack));
  const auto max_rise = std::size_t(std::floor(pc.T / pc.grid_dY + slack));
  if (max_rise < 1) throw InfeasibleError("T is smaller than one grid step in Y");
  const std::size_t layers = first_terminal + max_rise;

  auto X = [&](std::size_t i) { return double(i) * pc.grid_dX; };
  auto Y = [&](std::size_t j) { return double(j) * pc.grid_dY; };
  std::vector<double> coef(cols);
  for (std::size_t i = 0; i < cols; ++i) coef[i] = std::min(2.0 - X(i), 1.0);

  using Row = std::vector<double>;
  std::vector<Row> cost(layers, Row(cols, kInf));
  std::vector<std::vector<Pred>> pred(layers, std::vector<Pred>(cols));
  Row term(cols);

  for (std::size_t jt = 0; jt < layers; ++jt) {
    Row& row = cost[jt];
    std::vector<Pred>& back = pred[jt];
    for (std::size_t i = 0; i < cols; ++i) term[i] = boundary_term(log_inv, X(i), Y(jt));
    if (jt < first_terminal && Y(jt) <= pc.T + slack) {
      for (std::size_t i = 0; i < cols && X(i) <= 1.0 + 2.0 * pc.T + slack; ++i) row[i] = 0.0;
    }

    // Moves from strictly lower layers, one candidate row per source layer.
    const std::size_t lowest = jt > max_rise ? jt - max_rise : 0;
    const std::size_t sources = jt - lowest;
    std::vector<Row> cand(sources, Row(cols, kInf));
    std::vector<std::vector<std::int32_t>> from(sources, std::vector<std::int32_t>(cols, -1));
#pragma omp parallel for schedule(static)
    for (std::size_t s = 0; s < sources; ++s) {
      const std::size_t j = lowest + s;
      if (j >= first_terminal) continue;
      const Row& src = cost[j];
      double run = kInf;
      std::int32_t run_arg = -1;
      for (std::size_t i = 0; i < cols; ++i) {
        const double v = src[i] - term[i];
        if (v < run) {
          run = v;
          run_arg = std::int32_t(i);
        }
        if (run_arg < 0) continue;
        cand[s][i] = run + term[i] + (Y(jt) - Y(j)) * coef[i];
        from[s][i] = run_arg;
      }
    }
    for (std::size_t s = 0; s < sources; ++s) {
      for (std::size_t i = 0; i < cols; ++i) {
        if (cand[s][i] < row[i]) {
          row[i] = cand[s][i];
          back[i] = {std::int32_t(lowest + s), from[s][i]};
        }
      }
    }

    // Widening moves within the layer.
    if (jt < first_terminal) {
      double run = kInf;
      std::int32_t run_arg = -1;
      for (std::size_t i = 0; i < cols; ++i) {
        if (run_arg >= 0 && run + term[i] < row[i]) {
          row[i] = run + term[i];
          back[i] = {std::int32_t(jt), run_arg};
        }
        if (row[i] - term[i] < run) {
          run = row[i] - term[i];
          run_arg = std::int32_t(i);
        }
      }
    }
  }

  Pred best;
  double value = kInf;
  for (std::size_t j = first_terminal; j < layers; ++j) {
    for (std::size_t i = 0; i < cols; ++i) {
      if (cost[j][i] < value) {
        value = cost[j][i];
        best = {std::int32_t(j), std::int32_t(i)};
      }
    }
  }
  if (!(value < kInf)) throw InfeasibleError("no admissible grid path reaches Y >= 1/3");

  LambdaResult result;
  result.value = value;
  for (Pred at = best; at.layer >= 0; at = pred[std::size_t(at.layer)][std::size_t(at.col)]) {
    result.path.push_back({X(std::size_t(at.col)), Y(std::size_t(at.layer))});
  }
  std::reverse(result.path.begin(), result.path.end());
  for (std::size_t n = 0; n + 1 < result.path.size(); ++n) {
    result.terms.push_back(w_normalized(pc.p, result.path[n], result.path[n + 1]));
  }
  return result;
}

double limit_integral(double T, int k) {
  if (T < 0) throw std::invalid_argument("T must be nonnegative");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double slope = k + 1.0;
  if (T >= 1.0 / slope) return 0.0;
  const double r = 1.0 - slope * T;
  return r * r / (2.0 * slope);
}

void write_path_csv(std::ostream& out, const LambdaResult& result) {
  out << "n,X,Y,W\n";
  const auto old = out.precision(17);
  for (std::size_t n = 0; n < result.path.size(); ++n) {
    out << n << ',' << result.path[n].X << ',' << result.path[n].Y << ','
        << (n == 0 ? 0.0 : result.terms[n - 1]) << '\n';
  }
  out.precision(old);
}

}  // namespace abp::variational
