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

#ifndef ABP_DECOMPOSITION_HPP_
#define ABP_DECOMPOSITION_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abp/events.hpp"
#include "abp/lattice.hpp"

namespace abp::decomposition {

using SiteSet = std::vector<Site>;  // sorted row-major, no duplicates

/// Smallest rectangle containing s. Throws std::invalid_argument when empty.
Rect bounding_rect(const SiteSet& s);

/// A spanned set together with the initial sites that generate it.
struct SpannedSet {
  SiteSet sites;
  SiteSet generators;
  /// Trace step that created this set; -1 for initial singletons.
  int created_at = -1;
  /// Indices into SpanningTrace::all_sets of the sets merged to create it.
  std::vector<int> parts;
};

/// One merge of the disjoint-spanning procedure.
struct MergeStep {
  /// Positions of the merged sets in the list before the merge.
  std::vector<int> merged_positions;
  /// Index into SpanningTrace::all_sets of the merged sets and of the result.
  std::vector<int> merged;
  int result = -1;
  /// Every set dropped because it was contained in the result.
  std::vector<int> removed;
  /// Number of sets in the list after the merge.
  int live_count = 0;
};

struct SpanningTrace {
  /// Every set ever created, in creation order. Initial singletons first.
  std::vector<SpannedSet> all_sets;
  std::vector<MergeStep> steps;
  /// Indices into all_sets of the sets alive at the end.
  std::vector<int> final_sets;
};

/// Thrown when a traced run breaks one of the procedure's invariants.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SpanningOptions {
  /// Re-check the per-step invariants after every merge.
  bool check_invariants = false;
};

/// Repeatedly merges 2 or 3 live sets whose joint closure is connected
/// (pairs before triples, lexicographic by list position). Dynamics are
/// restricted to c's window.
SpanningTrace disjoint_spanning(const Configuration& c,
                                const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic(),
                                SpanningOptions options = {});

/// Replays the trace and checks, after every step: generators pairwise
/// disjoint and drawn from the initial sites; each set is the connected
/// closure of its generators; no set contains another; the union lies
/// between the initial sites and their closure. Also checks that the live
/// count strictly decreases and that the final union is the closure.
/// Throws InvariantViolation with a description on failure.
void verify_trace(const SpanningTrace& trace, const Configuration& c,
                  const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Thrown by last_step_witness when the trace has no usable final merge.
class NoWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The 2 or 3 sets merged by the last step, as indices into all_sets.
/// Requires at least one merge producing a set of more than 3 sites.
std::vector<int> last_step_witness(const SpanningTrace& trace);

enum class VertexKind { kSeed, kNormal, kSplitter };

std::string to_string(VertexKind kind);

struct HierarchyVertex {
  Rect label;
  VertexKind kind = VertexKind::kSeed;
  int parent = -1;
  std::vector<int> children;
};

struct Hierarchy {
  int precision = 1;
  /// Vertex 0 is the root.
  std::vector<HierarchyVertex> vertices;

  int depth() const;
};

/// Builds a hierarchy of precision t whose root label is the bounding
/// rectangle of the closure of `generators`. The closure must be connected.
Hierarchy build_hierarchy(const SiteSet& generators, int t,
                          const NeighborhoodSpec& spec = NeighborhoodSpec::anisotropic());

/// Checks containment of labels, kinds matching child counts, and the four
/// precision conditions.
bool validate_hierarchy(const Hierarchy& h, int t);

}  // namespace abp::decomposition

#endif  // ABP_DECOMPOSITION_HPP_
