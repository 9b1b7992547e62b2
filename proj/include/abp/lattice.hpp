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

#ifndef ABP_LATTICE_HPP_
#define ABP_LATTICE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace abp {

struct Site {
  int m = 0;
  int n = 0;

  friend constexpr Site operator+(Site a, Site b) { return {a.m + b.m, a.n + b.n}; }
  friend constexpr Site operator-(Site a, Site b) { return {a.m - b.m, a.n - b.n}; }
  friend constexpr bool operator==(Site, Site) = default;
  // Row-major: by n, then m.
  friend constexpr std::strong_ordering operator<=>(Site a, Site b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.m <=> b.m;
  }
};

/// The anisotropic neighborhood N_k: horizontal offsets +-1..+-reach plus
/// (0,+-1). A vacant site becomes occupied once `threshold` of its neighbors
/// are occupied.
class NeighborhoodSpec {
 public:
  /// The N_k family with threshold k + 1. k = 2 is the reference model.
  static NeighborhoodSpec anisotropic(int reach = 2);
  /// Simple bootstrap percolation (nearest neighbors, threshold 2). This is
  /// the same rule as anisotropic(1).
  static NeighborhoodSpec simple() { return anisotropic(1); }

  int reach() const { return reach_; }
  int threshold() const { return threshold_; }

  /// Offsets in the fixed order (+k,0)..(+1,0),(0,1),(-1,0)..(-k,0),(0,-1).
  std::span<const Site> offsets() const { return offsets_; }

  /// Pairwise differences a - b of distinct offsets: y - x for x, y sharing
  /// some translate z + N.
  std::span<const Site> weak_offsets() const { return weak_offsets_; }

  friend bool operator==(const NeighborhoodSpec& a, const NeighborhoodSpec& b) {
    return a.reach_ == b.reach_ && a.threshold_ == b.threshold_;
  }

 private:
  NeighborhoodSpec(int reach, int threshold);

  int reach_;
  int threshold_;
  std::vector<Site> offsets_;
  std::vector<Site> weak_offsets_;
};

/// Integer rectangle [a,b] x [c,d]; dimensions are (b - a, d - c).
struct Rect {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;

  /// Throws std::invalid_argument when a > b or c > d.
  static Rect make(int a, int b, int c, int d);
  /// Rectangle with `cols` x `rows` sites whose lower-left corner is `origin`.
  static Rect sized(int cols, int rows, Site origin = {});

  int x() const { return b - a; }
  int y() const { return d - c; }
  int cols() const { return b - a + 1; }
  int rows() const { return d - c + 1; }
  std::int64_t area() const { return std::int64_t(cols()) * rows(); }

  bool contains(Site s) const { return s.m >= a && s.m <= b && s.n >= c && s.n <= d; }
  bool contains(const Rect& r) const {
    return r.a >= a && r.b <= b && r.c >= c && r.d <= d;
  }
  Rect translated(Site v) const { return {a + v.m, b + v.m, c + v.n, d + v.n}; }
  std::optional<Rect> intersect(const Rect& r) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Sites outside a configuration's window that are treated as permanently
/// occupied. Empty means everything outside the window is vacant.
struct Boundary {
  std::vector<Rect> full;

  bool empty() const { return full.empty(); }
  bool contains(Site s) const;
};

/// Occupied-site set over a finite window. Dense row-major bitmap.
class Configuration {
 public:
  Configuration() : Configuration(Rect{}) {}
  explicit Configuration(const Rect& window);
  Configuration(const Rect& window, std::span<const Site> occupied);

  static Configuration full(const Rect& window);

  const Rect& window() const { return window_; }

  bool occupied(Site s) const {
    return window_.contains(s) && cells_[index(s)] != 0;
  }
  /// Throws std::out_of_range for sites outside the window.
  void set(Site s, bool value = true);
  void fill(const Rect& r, bool value = true);

  std::int64_t count() const;
  bool is_full() const { return count() == window_.area(); }
  /// Occupied sites in row-major order.
  std::vector<Site> sites() const;

  /// Same occupied set restricted to (or extended onto) another window.
  Configuration rewindowed(const Rect& window) const;
  Configuration translated(Site v) const;

  /// Occupied sites of `other` inside this window are added.
  void merge(const Configuration& other);
  bool is_subset_of(const Configuration& other) const;

  std::size_t index(Site s) const {
    return std::size_t(s.n - window_.c) * std::size_t(window_.cols()) +
           std::size_t(s.m - window_.a);
  }
  Site site_at(std::size_t i) const {
    auto cols = std::size_t(window_.cols());
    return {window_.a + int(i % cols), window_.c + int(i / cols)};
  }
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::span<std::uint8_t> cells() { return cells_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Rect window_;
  std::vector<std::uint8_t> cells_;
};

inline constexpr std::int64_t kNever = -1;

std::vector<Site> neighborhood(Site s, const NeighborhoodSpec& spec);

/// Number of occupied neighbors of `s`, counting boundary sites outside
/// the window as occupied.
int occupied_neighbors(const Configuration& c, Site s, const NeighborhoodSpec& spec,
                       const Boundary& boundary = {});

/// One synchronous update of the whole window.
Configuration step(const Configuration& c, const NeighborhoodSpec& spec,
                   const Boundary& boundary = {});

/// Least fixed point of `step` containing `c` (frontier worklist).
Configuration closure(const Configuration& c, const NeighborhoodSpec& spec,
                      const Boundary& boundary = {});

/// Reference closure: repeated full-window `step` until nothing changes.
Configuration closure_naive(const Configuration& c, const NeighborhoodSpec& spec,
                            const Boundary& boundary = {});

/// Occupation time of every window site (kNever if never occupied), one
/// entry per cell in row-major order.
std::vector<std::int64_t> occupation_times(const Configuration& c,
                                           const NeighborhoodSpec& spec,
                                           const Boundary& boundary = {});

/// Minimal t with `target` occupied after t synchronous steps, or kNever.
std::int64_t time_to_occupy(const Configuration& c, const NeighborhoodSpec& spec,
                            Site target, const Boundary& boundary = {});

/// Whether closure of (c restricted to region), with dynamics restricted to
/// region, covers region.
bool is_internally_filled(const Rect& region, const Configuration& c,
                          const NeighborhoodSpec& spec);

}  // namespace abp

#endif  // ABP_LATTICE_HPP_
