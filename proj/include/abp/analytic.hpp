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

// Closed-form quantities and bounds for the anisotropic model.
//
// Unless stated otherwise, `x` and `y` count sites: a rectangle of
// dimensions (x, y) here has x columns of y sites each.

#ifndef ABP_ANALYTIC_HPP_
#define ABP_ANALYTIC_HPP_

#include <cstdint>
#include <vector>

#include "abp/lattice.hpp"

namespace abp::analytic {

/// Largest line length for which the single-line probability is computed by
/// enumerating line states.
inline constexpr int kExactLineSites = 20;

struct BoundParams {
  double epsilon = 0.1;
  double p = 0.01;

  /// Throws std::invalid_argument unless both lie in (0, 1).
  void validate() const;
};

/// 1 - (1 - p)^y, the probability that a column of y sites is occupied.
double column_occupancy(double p, std::int64_t y);

/// Positive root of X^3 - u X^2 - u(1-u) X - u(1-u)^2, for u in (0, 1].
double alpha(double u);
/// log(alpha(u)), accurate when u is close to 1.
double log_alpha(double u);

/// Probability that x independent Bernoulli(u) columns contain no run of
/// `gap` consecutive failures (gap = 3 for the reference model).
double no_triple_gap_exact(double u, std::int64_t x, int gap = 3);
double log_no_triple_gap_exact(double u, std::int64_t x, int gap = 3);

struct HorizontalBounds {
  double u = 0;
  /// alpha(u)^x <= P <= alpha(u)^(x-2).
  double lower = 0;
  double upper = 0;
  /// exp(-(1+eps) x e^{-3py}) and exp(-(1-eps)(x-2) e^{-3py}).
  double exp_lower = 0;
  double exp_upper = 0;
  /// y0/p < y < 1/(y0 p^2).
  bool in_regime = false;
};

HorizontalBounds horiz_traversable_bounds(double p, std::int64_t x, std::int64_t y,
                                          double epsilon = 0.1, double y0 = 1.0);

struct NorthBound {
  /// Single-line probability used.
  double line_probability = 0;
  /// line_probability^y.
  double value = 0;
  /// True when line_probability was enumerated, false for the
  /// min(1, (8x - 16) p^2) surrogate.
  bool exact = false;
};

/// Lower bound on north traversability of x-by-y sites, given that the row
/// above the rectangle is sampled too.
NorthBound north_traversable_lower(double p, int x, std::int64_t y,
                                   const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Exact probability that one line of x sites (with its row above) holds a
/// site seeing `reach` occupied sites. Enumerates 2^x line states.
double single_line_probability(double p, int x,
                               const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

struct Dims {
  double x = 0;
  double y = 0;
};

struct CrossingBound {
  double value = 0;
  /// p^2 x1 < 1/k0 and k0/p < y1 < 1/(k0 p^2).
  bool in_regime = false;
};

/// exp(-(1+eps)[(x2-x1) e^{-3 p y2} - (y2-y1) log(p^2 x1)]), capped at 1.
CrossingBound crossing_lower_bound(double p, Dims inner, Dims outer, double epsilon,
                                   double k0 = 1.0);

/// Piecewise growth cost between nested rectangles.
double W_p(double p, Dims inner, Dims outer);

struct ScheduleStage {
  int n = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;

  /// [0, width] x [0, height]; throws std::overflow_error past int range.
  Rect rect() const;
};

/// R_n = [0, p^{-1-3n/log(1/p)}] x [0, n/p] for n = k0 .. ceil(log(1/p)/3 - log k0),
/// with both bounds rounded up.
std::vector<ScheduleStage> growth_schedule(double p, int k0);

/// Limit of p (log 1/p)^{-2} log T for N_k: 1 / (4(k+1)).
double threshold_constant(int k);

}  // namespace abp::analytic

#endif  // ABP_ANALYTIC_HPP_
