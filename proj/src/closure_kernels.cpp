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

// Closure kernels. `step` and `closure_naive` scan the whole window each
// sweep (rows in parallel); they are the reference path. `closure` and the
// occupation-time kernels only revisit neighbors of newly occupied sites.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "abp/lattice.hpp"

namespace abp {
namespace {

// Neighbor counts for every vacant window site, including boundary sites.
class CountField {
 public:
  CountField(const Configuration& c, const NeighborhoodSpec& spec, const Boundary& boundary)
      : window_(c.window()), counts_(c.cells().size(), 0) {
    auto cells = c.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i]) bump_from(c.site_at(i), cells, spec);
    }
    if (boundary.empty()) return;
    // Only sites within reach of the window edge see outside sites.
    for (int n = window_.c; n <= window_.d; ++n) {
      bool edge_row = n == window_.c || n == window_.d;
      for (int m = window_.a; m <= window_.b; ++m) {
        bool edge_col = m < window_.a + spec.reach() || m > window_.b - spec.reach();
        if (!edge_row && !edge_col) {
          m = window_.b - spec.reach();
          continue;
        }
        Site s{m, n};
        for (Site o : spec.offsets()) {
          Site t = s + o;
          if (!window_.contains(t) && boundary.contains(t)) ++counts_[c.index(s)];
        }
      }
    }
  }

  // Increments the count of every vacant site whose neighborhood holds `s`.
  // Returns through `reached` those that just hit `threshold`.
  template <typename F>
  void bump_from(Site s, std::span<const std::uint8_t> cells, const NeighborhoodSpec& spec,
                 int threshold, F&& reached) {
    for (Site o : spec.offsets()) {
      Site t = s - o;
      if (!window_.contains(t)) continue;
      auto j = index(t);
      if (cells[j]) continue;
      if (++counts_[j] == threshold) reached(j);
    }
  }

  int operator[](std::size_t i) const { return counts_[i]; }

 private:
  void bump_from(Site s, std::span<const std::uint8_t> cells, const NeighborhoodSpec& spec) {
    bump_from(s, cells, spec, -1, [](std::size_t) {});
  }
  std::size_t index(Site s) const {
    return std::size_t(s.n - window_.c) * std::size_t(window_.cols()) +
           std::size_t(s.m - window_.a);
  }

  Rect window_;
  std::vector<std::uint8_t> counts_;
};

// Synchronous layered propagation; calls on_layer(t, sites) for each step's
// newly occupied cells. Stops early when on_layer returns false.
template <typename F>
void propagate_layers(Configuration& state, const NeighborhoodSpec& spec,
                      const Boundary& boundary, F&& on_layer) {
  CountField counts(state, spec, boundary);
  auto cells = state.cells();
  std::vector<std::uint8_t> queued(cells.size(), 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i] && counts[i] >= spec.threshold()) {
      current.push_back(i);
      queued[i] = 1;
    }
  }
  std::vector<std::size_t> next;
  for (std::int64_t t = 1; !current.empty(); ++t) {
    for (auto i : current) cells[i] = 1;
    if (!on_layer(t, current)) return;
    next.clear();
    for (auto i : current) {
      counts.bump_from(state.site_at(i), cells, spec, spec.threshold(), [&](std::size_t j) {
        if (!queued[j]) {
          queued[j] = 1;
          next.push_back(j);
        }
      });
    }
    current.swap(next);
  }
}

}  // namespace

Configuration step(const Configuration& c, const NeighborhoodSpec& spec,
                   const Boundary& boundary) {
  Configuration out = c;
  const Rect w = c.window();
  auto dst = out.cells();
#pragma omp parallel for schedule(static)
  for (int n = w.c; n <= w.d; ++n) {
    for (int m = w.a; m <= w.b; ++m) {
      Site s{m, n};
      auto i = c.index(s);
      if (c.cells()[i]) continue;
      if (occupied_neighbors(c, s, spec, boundary) >= spec.threshold()) dst[i] = 1;
    }
  }
  return out;
}

Configuration closure_naive(const Configuration& c, const NeighborhoodSpec& spec,
                            const Boundary& boundary) {
  Configuration current = c;
  for (;;) {
    Configuration next = step(current, spec, boundary);
    if (next == current) return current;
    current = std::move(next);
  }
}

Configuration closure(const Configuration& c, const NeighborhoodSpec& spec,
                      const Boundary& boundary) {
  Configuration state = c;
  CountField counts(state, spec, boundary);
  auto cells = state.cells();
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i] && counts[i] >= spec.threshold()) work.push_back(i);
  }
  // A site is pushed once: either above threshold initially or when its
  // count first reaches threshold.
  while (!work.empty()) {
    auto i = work.back();
    work.pop_back();
    cells[i] = 1;
    counts.bump_from(state.site_at(i), cells, spec, spec.threshold(),
                     [&](std::size_t j) { work.push_back(j); });
  }
  return state;
}

std::vector<std::int64_t> occupation_times(const Configuration& c, const NeighborhoodSpec& spec,
                                           const Boundary& boundary) {
  std::vector<std::int64_t> times(c.cells().size(), kNever);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (c.cells()[i]) times[i] = 0;
  }
  Configuration state = c;
  propagate_layers(state, spec, boundary, [&](std::int64_t t, const std::vector<std::size_t>& layer) {
    for (auto i : layer) times[i] = t;
    return true;
  });
  return times;
}

std::int64_t time_to_occupy(const Configuration& c, const NeighborhoodSpec& spec, Site target,
                            const Boundary& boundary) {
  if (!c.window().contains(target)) throw std::invalid_argument("target outside window");
  if (c.occupied(target)) return 0;
  const auto goal = c.index(target);
  std::int64_t hit = kNever;
  Configuration state = c;
  propagate_layers(state, spec, boundary, [&](std::int64_t t, const std::vector<std::size_t>& layer) {
    for (auto i : layer) {
      if (i == goal) {
        hit = t;
        return false;
      }
    }
    return true;
  });
  return hit;
}

}  // namespace abp
