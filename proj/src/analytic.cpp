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

#include "abp/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace abp::analytic {
namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

void require_open_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
}

// With v = 1 - u and alpha = 1 - e, the cubic becomes
//   g(e) = v^3 - (1 + v + v^2) e + (2 + v) e^2 - e^3,
// which has a single root in [0, 1] and no cancellation near u = 1.
double alpha_deficit(double u) {
  const double v = 1.0 - u;
  auto g = [v](double e) { return v * v * v - (1 + v + v * v) * e + (2 + v) * e * e - e * e * e; };
  if (v == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) > 0 ? lo : hi) = mid;
  }
  double e = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double dg = -(1 + v + v * v) + 2 * (2 + v) * e - 3 * e * e;
    if (dg == 0.0) break;
    double next = e - g(e) / dg;
    if (next < lo || next > hi) break;
    e = next;
  }
  return e;
}

}  // namespace

void BoundParams::validate() const {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  require_open_probability(p);
}

double column_occupancy(double p, std::int64_t y) {
  require_probability(p, "p");
  if (y < 0) throw std::invalid_argument("column height must be nonnegative");
  if (y == 0 || p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return -std::expm1(double(y) * std::log1p(-p));
}

double alpha(double u) {
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("alpha needs u in (0,1]");
  return 1.0 - alpha_deficit(u);
}

double log_alpha(double u) {
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("alpha needs u in (0,1]");
  return std::log1p(-alpha_deficit(u));
}

double log_no_triple_gap_exact(double u, std::int64_t x, int gap) {
  require_probability(u, "u");
  if (x < 0) throw std::invalid_argument("column count must be nonnegative");
  if (gap < 1) throw std::invalid_argument("gap length must be >= 1");
  // state[r] = P(no forbidden run so far, trailing failure run = r), rescaled
  // every step; the scale is tracked in log space.
  std::vector<double> state(std::size_t(gap), 0.0);
  std::vector<double> next(state.size());
  state[0] = 1.0;
  double log_scale = 0.0;
  for (std::int64_t i = 0; i < x; ++i) {
    double total = 0.0;
    for (double s : state) total += s;
    next[0] = u * total;
    for (std::size_t r = 1; r < state.size(); ++r) next[r] = (1.0 - u) * state[r - 1];
    double norm = 0.0;
    for (double s : next) norm += s;
    if (norm == 0.0) return -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < state.size(); ++r) state[r] = next[r] / norm;
    log_scale += std::log(norm);
  }
  return log_scale;
}

double no_triple_gap_exact(double u, std::int64_t x, int gap) {
  return std::exp(log_no_triple_gap_exact(u, x, gap));
}

HorizontalBounds horiz_traversable_bounds(double p, std::int64_t x, std::int64_t y,
                                          double epsilon, double y0) {
  require_open_probability(p);
  if (x < 0 || y < 1) throw std::invalid_argument("need x >= 0 columns of y >= 1 sites");
  HorizontalBounds out;
  out.u = column_occupancy(p, y);
  const double la = log_alpha(out.u);
  out.lower = std::exp(double(x) * la);
  out.upper = std::exp(double(x - 2) * la);
  const double decay = std::exp(-3.0 * p * double(y));
  out.exp_lower = std::exp(-(1.0 + epsilon) * double(x) * decay);
  out.exp_upper = std::exp(-(1.0 - epsilon) * double(x - 2) * decay);
  out.in_regime = y0 / p < double(y) && double(y) < 1.0 / (y0 * p * p);
  return out;
}

double single_line_probability(double p, int x, const NeighborhoodSpec& spec) {
  require_probability(p, "p");
  if (x < 1 || x > kExactLineSites) throw std::invalid_argument("line length outside enumeration range");
  const int need = spec.reach();
  const std::uint32_t states = 1u << x;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    const int ones = std::popcount(mask);
    const double weight = std::pow(p, ones) * std::pow(1.0 - p, x - ones);
    if (weight == 0.0) continue;
    bool done = false;
    int one_short = 0;
    for (int m = 0; m < x && !done; ++m) {
      int h = 0;
      for (int i = 1; i <= spec.reach(); ++i) {
        if (m + i < x && (mask >> (m + i) & 1u)) ++h;
        if (m - i >= 0 && (mask >> (m - i) & 1u)) ++h;
      }
      if (h >= need) done = true;
      else if (h == need - 1) ++one_short;
    }
    // A site one short succeeds iff the site above it is occupied.
    double above = 0.0;
    if (one_short > 0) above = p == 1.0 ? 1.0 : -std::expm1(one_short * std::log1p(-p));
    total += weight * (done ? 1.0 : above);
  }
  return std::min(total, 1.0);
}

NorthBound north_traversable_lower(double p, int x, std::int64_t y, const NeighborhoodSpec& spec) {
  require_probability(p, "p");
  if (y < 0) throw std::invalid_argument("line count must be nonnegative");
  NorthBound out;
  if (x <= kExactLineSites) {
    out.line_probability = single_line_probability(p, x, spec);
    out.exact = true;
  } else {
    if (x < 3) throw std::invalid_argument("surrogate needs x >= 3");
    out.line_probability = std::min(1.0, (8.0 * x - 16.0) * p * p);
  }
  out.value = out.line_probability == 0.0 ? (y == 0 ? 1.0 : 0.0)
                                          : std::exp(double(y) * std::log(out.line_probability));
  return out;
}

CrossingBound crossing_lower_bound(double p, Dims inner, Dims outer, double epsilon, double k0) {
  require_open_probability(p);
  if (!(inner.x > 0 && inner.y > 0 && outer.x > 0 && outer.y > 0)) {
    throw std::invalid_argument("rectangle dimensions must be positive");
  }
  if (inner.x > outer.x || inner.y > outer.y) {
    throw std::invalid_argument("inner rectangle must fit inside outer");
  }
  const double exponent = (outer.x - inner.x) * std::exp(-3.0 * p * outer.y) -
                          (outer.y - inner.y) * std::log(p * p * inner.x);
  CrossingBound out;
  out.value = std::min(1.0, std::exp(-(1.0 + epsilon) * exponent));
  out.in_regime = p * p * inner.x < 1.0 / k0 && k0 / p < inner.y && inner.y < 1.0 / (k0 * p * p);
  return out;
}

double W_p(double p, Dims inner, Dims outer) {
  require_open_probability(p);
  if (inner.x > outer.x || inner.y > outer.y) {
    throw std::invalid_argument("W_p needs nested rectangles");
  }
  const double log_inv = -std::log(p);
  const double prefactor = p / (log_inv * log_inv);
  const double horizontal = (outer.x - inner.x) * std::exp(-3.0 * p * outer.y);
  const double dy = outer.y - inner.y;
  if (outer.x >= 1.0 / (p * p)) return prefactor * horizontal;
  if (outer.x >= 1.0 / p) return prefactor * (horizontal - dy * std::log(p * p * outer.x));
  return prefactor * (horizontal - dy * std::log(p));
}

Rect ScheduleStage::rect() const {
  if (width > std::numeric_limits<int>::max() || height > std::numeric_limits<int>::max()) {
    throw std::overflow_error("schedule rectangle exceeds integer coordinates");
  }
  return {0, int(width), 0, int(height)};
}

std::vector<ScheduleStage> growth_schedule(double p, int k0) {
  require_open_probability(p);
  if (k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  const double log_inv = -std::log(p);
  const double last = std::ceil(log_inv / 3.0 - std::log(double(k0)));
  std::vector<ScheduleStage> out;
  for (int n = k0; n <= last; ++n) {
    // p^{-1-3n/log(1/p)} = exp(log(1/p) + 3n).
    const double width = std::ceil(std::exp(log_inv + 3.0 * n));
    const double height = std::ceil(n / p);
    if (width > 9.0e18 || height > 9.0e18) throw std::overflow_error("schedule dimensions overflow");
    out.push_back({n, std::int64_t(width), std::int64_t(height)});
  }
  return out;
}

double threshold_constant(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return 1.0 / (4.0 * (k + 1));
}

}  // namespace abp::analytic
