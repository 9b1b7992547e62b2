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

#ifndef ABP_EVENTS_HPP_
#define ABP_EVENTS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abp/lattice.hpp"

namespace abp {

enum class Direction { kNorth, kSouth };

struct CrossingParams {
  int k = 2;
};

/// Pieces of R2 = [c1,c2] x [d1,d2] around R1 = [a1,a2] x [b1,b2]. The side
/// bands use closed intervals, so a side with no room collapses onto R1's
/// edge column or row.
struct CornerDecomposition {
  Rect left;
  Rect right;
  Rect top;
  Rect bottom;
  /// Sites of R2 sharing neither a column nor a row with R1, row-major.
  std::vector<Site> corner;
};

/// No (reach + 1) consecutive columns of r are entirely vacant. Vacuously
/// true when r has too few columns.
bool is_horizontally_traversable(const Configuration& c, const Rect& r,
                                 const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Every row of r contains a site whose horizontal neighbors plus the site
/// above (kNorth) or below (kSouth) hold at least `reach` occupied sites.
/// Sites outside r count when occupied in c's window.
bool is_vertically_traversable(const Configuration& c, const Rect& r, Direction direction,
                               const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// For every strip [a,b] x [j, j+k] of r, closing the strip with the rest of
/// r full leaves an N-path of occupied strip sites from the top row to the
/// bottom row. Requires y(r) >= k.
bool is_k_vertically_crossed(const Configuration& c, const Rect& r, CrossingParams params,
                             const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Top-to-bottom path test for a single strip whose outside rows are full.
/// `full_outside` lists the externally full sites.
bool strip_has_crossing_path(const Configuration& strip, const Boundary& full_outside,
                             const NeighborhoodSpec& spec);

bool is_crossed(const Configuration& c, const Rect& r, CrossingParams params,
                const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Throws std::invalid_argument unless r1 is inside r2.
CornerDecomposition corner_decomposition(const Rect& r1, const Rect& r2);

/// r2 is internally filled once r1 is made full.
bool occurs_I(const Rect& r1, const Rect& r2, const Configuration& c,
              const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// r2 is k-vertically crossed once r1 is made full.
bool occurs_A_k(const Rect& r1, const Rect& r2, const Configuration& c, CrossingParams params,
                const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Classes of occupied sites under the transitive closure of "x, y lie in a
/// common translate z + N". With `include_adjacent`, pairs with x in y + N
/// are linked as well. Each class is row-major; classes are ordered by their
/// first site.
std::vector<std::vector<Site>> weakly_connected_components(
    const Configuration& c, const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic(),
    bool include_adjacent = false);

/// Classes of occupied sites under N-adjacency (x in y + N).
std::vector<std::vector<Site>> connected_components(
    const Configuration& c, const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Event registry: a name plus the parameters it needs.
struct EventSpec {
  std::string name;
  CrossingParams crossing{};
  /// Inner rectangle for "I" and "A_k".
  std::optional<Rect> inner;
};

std::span<const std::string_view> event_names();
bool is_known_event(std::string_view name);

/// Evaluates the named event on region r of c. Throws std::invalid_argument
/// for unknown names or missing parameters.
bool evaluate_event(const EventSpec& event, const Configuration& c, const Rect& r,
                    const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

}  // namespace abp

#endif  // ABP_EVENTS_HPP_
