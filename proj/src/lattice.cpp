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

#include "abp/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace abp {

NeighborhoodSpec NeighborhoodSpec::anisotropic(int reach) {
  if (reach < 1) throw std::invalid_argument("neighborhood reach must be >= 1");
  return NeighborhoodSpec(reach, reach + 1);
}

NeighborhoodSpec::NeighborhoodSpec(int reach, int threshold)
    : reach_(reach), threshold_(threshold) {
  for (int i = reach; i >= 1; --i) offsets_.push_back({i, 0});
  offsets_.push_back({0, 1});
  for (int i = 1; i <= reach; ++i) offsets_.push_back({-i, 0});
  offsets_.push_back({0, -1});

  for (Site u : offsets_) {
    for (Site v : offsets_) {
      if (u == v) continue;
      weak_offsets_.push_back(u - v);
    }
  }
  std::sort(weak_offsets_.begin(), weak_offsets_.end());
  weak_offsets_.erase(std::unique(weak_offsets_.begin(), weak_offsets_.end()),
                      weak_offsets_.end());
}

Rect Rect::make(int a, int b, int c, int d) {
  if (a > b || c > d) {
    throw std::invalid_argument("rectangle bounds must satisfy a <= b and c <= d");
  }
  return {a, b, c, d};
}

Rect Rect::sized(int cols, int rows, Site origin) {
  if (cols < 1 || rows < 1) throw std::invalid_argument("rectangle must have at least one site");
  return {origin.m, origin.m + cols - 1, origin.n, origin.n + rows - 1};
}

std::optional<Rect> Rect::intersect(const Rect& r) const {
  Rect out{std::max(a, r.a), std::min(b, r.b), std::max(c, r.c), std::min(d, r.d)};
  if (out.a > out.b || out.c > out.d) return std::nullopt;
  return out;
}

bool Boundary::contains(Site s) const {
  return std::any_of(full.begin(), full.end(), [s](const Rect& r) { return r.contains(s); });
}

Configuration::Configuration(const Rect& window)
    : window_(Rect::make(window.a, window.b, window.c, window.d)),
      cells_(std::size_t(window_.area()), 0) {}

Configuration::Configuration(const Rect& window, std::span<const Site> occupied)
    : Configuration(window) {
  for (Site s : occupied) set(s);
}

Configuration Configuration::full(const Rect& window) {
  Configuration c(window);
  std::fill(c.cells_.begin(), c.cells_.end(), std::uint8_t{1});
  return c;
}

void Configuration::set(Site s, bool value) {
  if (!window_.contains(s)) {
    throw std::out_of_range("site (" + std::to_string(s.m) + "," + std::to_string(s.n) +
                            ") outside window");
  }
  cells_[index(s)] = value ? 1 : 0;
}

void Configuration::fill(const Rect& r, bool value) {
  auto clipped = window_.intersect(r);
  if (!clipped) return;
  for (int n = clipped->c; n <= clipped->d; ++n) {
    auto row = cells_.begin() + std::ptrdiff_t(index({clipped->a, n}));
    std::fill(row, row + clipped->cols(), std::uint8_t(value ? 1 : 0));
  }
}

std::int64_t Configuration::count() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::int64_t{0});
}

std::vector<Site> Configuration::sites() const {
  std::vector<Site> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i]) out.push_back(site_at(i));
  }
  return out;
}

Configuration Configuration::rewindowed(const Rect& window) const {
  Configuration out(window);
  out.merge(*this);
  return out;
}

Configuration Configuration::translated(Site v) const {
  Configuration out(window_.translated(v));
  out.cells_ = cells_;
  return out;
}

void Configuration::merge(const Configuration& other) {
  auto overlap = window_.intersect(other.window_);
  if (!overlap) return;
  for (int n = overlap->c; n <= overlap->d; ++n) {
    for (int m = overlap->a; m <= overlap->b; ++m) {
      if (other.cells_[other.index({m, n})]) cells_[index({m, n})] = 1;
    }
  }
}

bool Configuration::is_subset_of(const Configuration& other) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] && !other.occupied(site_at(i))) return false;
  }
  return true;
}

std::vector<Site> neighborhood(Site s, const NeighborhoodSpec& spec) {
  std::vector<Site> out;
  out.reserve(spec.offsets().size());
  for (Site o : spec.offsets()) out.push_back(s + o);
  return out;
}

int occupied_neighbors(const Configuration& c, Site s, const NeighborhoodSpec& spec,
                       const Boundary& boundary) {
  int count = 0;
  for (Site o : spec.offsets()) {
    Site t = s + o;
    if (c.window().contains(t) ? c.occupied(t) : boundary.contains(t)) ++count;
  }
  return count;
}

bool is_internally_filled(const Rect& region, const Configuration& c,
                          const NeighborhoodSpec& spec) {
  if (!c.window().contains(region)) {
    throw std::invalid_argument("region must lie inside the configuration window");
  }
  return closure(c.rewindowed(region), spec).is_full();
}

}  // namespace abp
