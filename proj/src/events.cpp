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

#include "abp/events.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace abp {
namespace {

void require_inside(const Configuration& c, const Rect& r) {
  if (!c.window().contains(r)) {
    throw std::invalid_argument("rectangle must lie inside the configuration window");
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::vector<Site>> components_by_offsets(const Configuration& c,
                                                     std::span<const Site> offsets) {
  auto cells = c.cells();
  DisjointSets sets(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) continue;
    Site s = c.site_at(i);
    for (Site o : offsets) {
      Site t = s + o;
      if (c.occupied(t)) sets.unite(i, c.index(t));
    }
  }
  // Roots are the smallest index in each class, so classes come out ordered
  // by their first row-major site.
  std::vector<std::vector<Site>> out;
  std::vector<std::size_t> slot(cells.size(), SIZE_MAX);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) continue;
    auto root = sets.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(c.site_at(i));
  }
  return out;
}

constexpr std::array<std::string_view, 7> kEventNames = {
    "horiz_traversable", "north_traversable", "south_traversable", "k_vert_crossed",
    "crossed",           "I",                 "A_k"};

}  // namespace

bool is_horizontally_traversable(const Configuration& c, const Rect& r,
                                 const NeighborhoodSpec& spec) {
  require_inside(c, r);
  int run = 0;
  for (int m = r.a; m <= r.b; ++m) {
    bool occupied = false;
    for (int n = r.c; n <= r.d && !occupied; ++n) occupied = c.occupied({m, n});
    run = occupied ? 0 : run + 1;
    if (run > spec.reach()) return false;
  }
  return true;
}

bool is_vertically_traversable(const Configuration& c, const Rect& r, Direction direction,
                               const NeighborhoodSpec& spec) {
  require_inside(c, r);
  const int dn = direction == Direction::kNorth ? 1 : -1;
  for (int n = r.c; n <= r.d; ++n) {
    bool line_ok = false;
    for (int m = r.a; m <= r.b && !line_ok; ++m) {
      int count = c.occupied({m, n + dn}) ? 1 : 0;
      for (int i = 1; i <= spec.reach(); ++i) {
        count += c.occupied({m + i, n}) + c.occupied({m - i, n});
      }
      line_ok = count >= spec.reach();
    }
    if (!line_ok) return false;
  }
  return true;
}

bool strip_has_crossing_path(const Configuration& strip, const Boundary& full_outside,
                             const NeighborhoodSpec& spec) {
  Configuration closed = closure(strip, spec, full_outside);
  const Rect& w = closed.window();
  std::vector<std::uint8_t> seen(closed.cells().size(), 0);
  std::deque<Site> queue;
  for (int m = w.a; m <= w.b; ++m) {
    Site s{m, w.d};
    if (closed.occupied(s)) {
      seen[closed.index(s)] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Site s = queue.front();
    queue.pop_front();
    if (s.n == w.c) return true;
    for (Site o : spec.offsets()) {
      Site t = s + o;
      if (closed.occupied(t) && !seen[closed.index(t)]) {
        seen[closed.index(t)] = 1;
        queue.push_back(t);
      }
    }
  }
  return false;
}

bool is_k_vertically_crossed(const Configuration& c, const Rect& r, CrossingParams params,
                             const NeighborhoodSpec& spec) {
  require_inside(c, r);
  if (params.k < 1) throw std::invalid_argument("crossing parameter k must be >= 1");
  if (r.y() < params.k) throw std::invalid_argument("k-vertical crossing needs y(r) >= k");
  for (int j = r.c; j <= r.d - params.k; ++j) {
    Rect strip{r.a, r.b, j, j + params.k};
    Boundary outside;
    if (j > r.c) outside.full.push_back({r.a, r.b, r.c, j - 1});
    if (j + params.k < r.d) outside.full.push_back({r.a, r.b, j + params.k + 1, r.d});
    if (!strip_has_crossing_path(c.rewindowed(strip), outside, spec)) return false;
  }
  return true;
}

bool is_crossed(const Configuration& c, const Rect& r, CrossingParams params,
                const NeighborhoodSpec& spec) {
  return is_k_vertically_crossed(c, r, params, spec) && is_horizontally_traversable(c, r, spec);
}

CornerDecomposition corner_decomposition(const Rect& r1, const Rect& r2) {
  if (!r2.contains(r1)) throw std::invalid_argument("corner decomposition needs r1 inside r2");
  CornerDecomposition out{
      .left = {r2.a, r1.a, r2.c, r2.d},
      .right = {r1.b, r2.b, r2.c, r2.d},
      .top = {r1.a, r1.b, r1.d, r2.d},
      .bottom = {r1.a, r1.b, r2.c, r1.c},
      .corner = {},
  };
  for (int n = r2.c; n <= r2.d; ++n) {
    if (n >= r1.c && n <= r1.d) continue;
    for (int m = r2.a; m <= r2.b; ++m) {
      if (m < r1.a || m > r1.b) out.corner.push_back({m, n});
    }
  }
  return out;
}

bool occurs_I(const Rect& r1, const Rect& r2, const Configuration& c,
              const NeighborhoodSpec& spec) {
  require_inside(c, r2);
  if (!r2.contains(r1)) throw std::invalid_argument("event I needs r1 inside r2");
  Configuration inner = c.rewindowed(r2);
  inner.fill(r1);
  return closure(inner, spec).is_full();
}

bool occurs_A_k(const Rect& r1, const Rect& r2, const Configuration& c, CrossingParams params,
                const NeighborhoodSpec& spec) {
  require_inside(c, r2);
  if (!r2.contains(r1)) throw std::invalid_argument("event A_k needs r1 inside r2");
  Configuration inner = c.rewindowed(r2);
  inner.fill(r1);
  return is_k_vertically_crossed(inner, r2, params, spec);
}

std::vector<std::vector<Site>> weakly_connected_components(const Configuration& c,
                                                           const NeighborhoodSpec& spec,
                                                           bool include_adjacent) {
  std::vector<Site> offsets(spec.weak_offsets().begin(), spec.weak_offsets().end());
  if (include_adjacent) offsets.insert(offsets.end(), spec.offsets().begin(), spec.offsets().end());
  return components_by_offsets(c, offsets);
}

std::vector<std::vector<Site>> connected_components(const Configuration& c,
                                                    const NeighborhoodSpec& spec) {
  return components_by_offsets(c, spec.offsets());
}

std::span<const std::string_view> event_names() { return kEventNames; }

bool is_known_event(std::string_view name) {
  return std::find(kEventNames.begin(), kEventNames.end(), name) != kEventNames.end();
}

bool evaluate_event(const EventSpec& event, const Configuration& c, const Rect& r,
                    const NeighborhoodSpec& spec) {
  const auto& name = event.name;
  if (name == "horiz_traversable") return is_horizontally_traversable(c, r, spec);
  if (name == "north_traversable") return is_vertically_traversable(c, r, Direction::kNorth, spec);
  if (name == "south_traversable") return is_vertically_traversable(c, r, Direction::kSouth, spec);
  if (name == "k_vert_crossed") return is_k_vertically_crossed(c, r, event.crossing, spec);
  if (name == "crossed") return is_crossed(c, r, event.crossing, spec);
  if (name == "I" || name == "A_k") {
    if (!event.inner) throw std::invalid_argument("event " + name + " needs an inner rectangle");
    return name == "I" ? occurs_I(*event.inner, r, c, spec)
                       : occurs_A_k(*event.inner, r, c, event.crossing, spec);
  }
  throw std::invalid_argument("unknown event: " + name);
}

}  // namespace abp
