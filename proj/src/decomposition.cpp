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

#include "abp/decomposition.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <iterator>
#include <map>
#include <set>

namespace abp::decomposition {
namespace {

SiteSet sorted_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const SiteSet& a, const SiteSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Closure of `sites` inside `window`, plus whether it is N-connected.
struct Spanned {
  SiteSet sites;
  bool connected = false;
};

Spanned span(const SiteSet& sites, const Rect& window, const NeighborhoodSpec& spec) {
  Configuration closed = closure(Configuration(window, sites), spec);
  Spanned out;
  out.sites = closed.sites();
  out.connected = !out.sites.empty() && connected_components(closed, spec).size() == 1;
  return out;
}

// Offsets d such that sets holding s and s + d can interact or touch.
std::vector<Site> interaction_offsets(const NeighborhoodSpec& spec) {
  std::vector<Site> out{{0, 0}};
  out.insert(out.end(), spec.offsets().begin(), spec.offsets().end());
  out.insert(out.end(), spec.weak_offsets().begin(), spec.weak_offsets().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class SpanningRun {
 public:
  SpanningRun(const Configuration& c, const NeighborhoodSpec& spec, SpanningOptions options)
      : window_(c.window()),
        spec_(spec),
        options_(options),
        near_offsets_(interaction_offsets(spec)),
        marks_(std::size_t(window_.area()), 0),
        initial_(c.sites()),
        closure_(closure(c, spec)) {}

  SpanningTrace run() {
    for (Site s : initial_) {
      add_set({.sites = {s}, .generators = {s}, .created_at = -1, .parts = {}});
      live_.push_back(int(trace_.all_sets.size()) - 1);
    }
    for (int id : live_) refresh_near(id);
    if (options_.check_invariants) check_state();
    while (merge_once()) {
      if (options_.check_invariants) check_state();
    }
    trace_.final_sets = live_;
    return std::move(trace_);
  }

 private:
  void add_set(SpannedSet set) {
    trace_.all_sets.push_back(std::move(set));
    near_.resize(trace_.all_sets.size());
    for (auto& row : near_) row.resize(trace_.all_sets.size(), 0);
  }

  std::size_t index(Site s) const {
    return std::size_t(s.n - window_.c) * std::size_t(window_.cols()) + std::size_t(s.m - window_.a);
  }

  bool near(const SiteSet& a, const SiteSet& b) {
    for (Site s : a) marks_[index(s)] = 1;
    bool hit = false;
    for (Site s : b) {
      for (Site d : near_offsets_) {
        Site t = s + d;
        if (window_.contains(t) && marks_[index(t)]) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    for (Site s : a) marks_[index(s)] = 0;
    return hit;
  }

  void refresh_near(int id) {
    for (int other : live_) {
      if (other == id) continue;
      bool v = near(trace_.all_sets[std::size_t(id)].sites, trace_.all_sets[std::size_t(other)].sites);
      near_[std::size_t(id)][std::size_t(other)] = near_[std::size_t(other)][std::size_t(id)] = v;
    }
  }

  const SiteSet& sites(int id) const { return trace_.all_sets[std::size_t(id)].sites; }

  bool is_near(int a, int b) const { return near_[std::size_t(a)][std::size_t(b)] != 0; }

  const Spanned& pair_span(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = pair_cache_.find(key);
    if (it == pair_cache_.end()) {
      it = pair_cache_.emplace(key, span(sorted_union(sites(a), sites(b)), window_, spec_)).first;
    }
    return it->second;
  }

  bool merge_once() {
    const int m = int(live_.size());
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        int a = live_[std::size_t(i)], b = live_[std::size_t(j)];
        if (!is_near(a, b)) continue;
        const Spanned& s = pair_span(a, b);
        if (s.connected) {
          merge({i, j}, s.sites);
          return true;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (int l = j + 1; l < m; ++l) {
          std::array<int, 3> ids{live_[std::size_t(i)], live_[std::size_t(j)], live_[std::size_t(l)]};
          if (!triple_can_connect(ids)) continue;
          std::array<int, 3> key = ids;
          std::sort(key.begin(), key.end());
          if (failed_triples_.contains(key)) continue;
          Spanned s = span(sorted_union(sorted_union(sites(ids[0]), sites(ids[1])), sites(ids[2])),
                           window_, spec_);
          if (s.connected) {
            merge({i, j, l}, s.sites);
            return true;
          }
          failed_triples_.insert(key);
        }
      }
    }
    return false;
  }

  // With no interacting pair the joint closure is the disjoint union. With a
  // single interacting pair, the third set must interact with that pair's
  // closure.
  bool triple_can_connect(const std::array<int, 3>& ids) {
    int edges = 0;
    int lone = -1;
    std::pair<int, int> edge{-1, -1};
    for (int x = 0; x < 3; ++x) {
      for (int y = x + 1; y < 3; ++y) {
        if (is_near(ids[std::size_t(x)], ids[std::size_t(y)])) {
          ++edges;
          edge = {ids[std::size_t(x)], ids[std::size_t(y)]};
          lone = ids[std::size_t(3 - x - y)];
        }
      }
    }
    if (edges >= 2) return true;
    if (edges == 0) return false;
    return near(pair_span(edge.first, edge.second).sites, sites(lone));
  }

  void merge(const std::vector<int>& positions, SiteSet spanned) {
    MergeStep step;
    step.merged_positions = positions;
    SpannedSet created;
    created.sites = std::move(spanned);
    created.created_at = int(trace_.steps.size());
    for (int pos : positions) {
      int id = live_[std::size_t(pos)];
      step.merged.push_back(id);
      created.parts.push_back(id);
      created.generators = sorted_union(created.generators, trace_.all_sets[std::size_t(id)].generators);
    }
    std::vector<int> kept;
    for (int id : live_) {
      bool merged = std::find(step.merged.begin(), step.merged.end(), id) != step.merged.end();
      if (merged || is_subset(sites(id), created.sites)) {
        if (!merged) step.removed.push_back(id);
        continue;
      }
      kept.push_back(id);
    }
    add_set(std::move(created));
    step.result = int(trace_.all_sets.size()) - 1;
    kept.push_back(step.result);
    live_ = std::move(kept);
    refresh_near(step.result);
    step.live_count = int(live_.size());
    trace_.steps.push_back(std::move(step));
  }

  void check_state() {
    std::vector<std::uint8_t> gen_seen(marks_.size(), 0);
    std::vector<std::uint8_t> covered(marks_.size(), 0);
    for (int id : live_) {
      const SpannedSet& s = trace_.all_sets[std::size_t(id)];
      for (Site g : s.generators) {
        if (gen_seen[index(g)]) throw InvariantViolation("generator sets overlap");
        gen_seen[index(g)] = 1;
        if (!std::binary_search(initial_.begin(), initial_.end(), g)) {
          throw InvariantViolation("generator outside the initial configuration");
        }
      }
      for (Site x : s.sites) covered[index(x)] = 1;
    }
    if (!trace_.steps.empty()) {
      const SpannedSet& last = trace_.all_sets.back();
      Spanned again = span(last.generators, window_, spec_);
      if (again.sites != last.sites) throw InvariantViolation("set differs from closure of generators");
      if (!again.connected) throw InvariantViolation("spanned set is not connected");
    }
    for (int a : live_) {
      for (int b : live_) {
        if (a != b && is_subset(sites(a), sites(b))) throw InvariantViolation("one set contains another");
      }
    }
    for (Site k : initial_) {
      if (!covered[index(k)]) throw InvariantViolation("initial site not covered");
    }
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (covered[i] && !closure_.cells()[i]) throw InvariantViolation("union exceeds the closure");
    }
  }

  Rect window_;
  NeighborhoodSpec spec_;
  SpanningOptions options_;
  std::vector<Site> near_offsets_;
  std::vector<std::uint8_t> marks_;
  SiteSet initial_;
  Configuration closure_;
  SpanningTrace trace_;
  std::vector<int> live_;
  std::vector<std::vector<std::uint8_t>> near_;
  std::map<std::pair<int, int>, Spanned> pair_cache_;
  std::set<std::array<int, 3>> failed_triples_;
};

}  // namespace

Rect bounding_rect(const SiteSet& s) {
  if (s.empty()) throw std::invalid_argument("bounding rectangle of an empty set");
  Rect r{s.front().m, s.front().m, s.front().n, s.front().n};
  for (Site x : s) {
    r.a = std::min(r.a, x.m);
    r.b = std::max(r.b, x.m);
    r.c = std::min(r.c, x.n);
    r.d = std::max(r.d, x.n);
  }
  return r;
}

SpanningTrace disjoint_spanning(const Configuration& c, const NeighborhoodSpec& spec,
                                SpanningOptions options) {
  return SpanningRun(c, spec, options).run();
}

void verify_trace(const SpanningTrace& trace, const Configuration& c, const NeighborhoodSpec& spec) {
  const SiteSet initial = c.sites();
  const Configuration full_closure = closure(c, spec);
  auto fail = [](int step, const std::string& what) {
    throw InvariantViolation("step " + std::to_string(step) + ": " + what);
  };

  std::vector<int> live;
  for (std::size_t id = 0; id < trace.all_sets.size() && trace.all_sets[id].created_at < 0; ++id) {
    live.push_back(int(id));
  }
  if (live.size() != initial.size()) fail(0, "initial sets are not the occupied sites");
  for (std::size_t i = 0; i < live.size(); ++i) {
    const auto& s = trace.all_sets[std::size_t(live[i])];
    if (s.sites != SiteSet{initial[i]} || s.generators != s.sites) fail(0, "initial set is not a singleton");
  }

  auto check = [&](int step) {
    std::set<Site> gens;
    Configuration covered(c.window());
    for (int id : live) {
      const auto& s = trace.all_sets[std::size_t(id)];
      for (Site g : s.generators) {
        if (!gens.insert(g).second) fail(step, "generators are not pairwise disjoint");
        if (!std::binary_search(initial.begin(), initial.end(), g)) fail(step, "generator not initially occupied");
      }
      for (Site x : s.sites) covered.set(x);
    }
    for (int a : live) {
      for (int b : live) {
        if (a != b && is_subset(trace.all_sets[std::size_t(a)].sites, trace.all_sets[std::size_t(b)].sites)) {
          fail(step, "a set is contained in another");
        }
      }
    }
    for (Site k : initial) {
      if (!covered.occupied(k)) fail(step, "initial site not covered");
    }
    if (!covered.is_subset_of(full_closure)) fail(step, "union exceeds the closure");
    return covered;
  };

  check(0);
  std::size_t previous = live.size();
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const MergeStep& step = trace.steps[t];
    const auto& created = trace.all_sets[std::size_t(step.result)];
    Spanned again = span(created.generators, c.window(), spec);
    if (again.sites != created.sites) fail(int(t) + 1, "set is not the closure of its generators");
    if (!again.connected) fail(int(t) + 1, "spanned set is not connected");
    std::vector<int> next;
    for (int id : live) {
      bool gone = std::find(step.merged.begin(), step.merged.end(), id) != step.merged.end() ||
                  std::find(step.removed.begin(), step.removed.end(), id) != step.removed.end();
      if (!gone) next.push_back(id);
    }
    next.push_back(step.result);
    live = std::move(next);
    if (live.size() >= previous) fail(int(t) + 1, "live count did not decrease");
    previous = live.size();
    check(int(t) + 1);
  }
  if (live != trace.final_sets) fail(int(trace.steps.size()), "final sets do not match replay");
  Configuration final_union = check(int(trace.steps.size()));
  if (!(final_union == full_closure)) fail(int(trace.steps.size()), "final union is not the closure");
}

std::vector<int> last_step_witness(const SpanningTrace& trace) {
  if (trace.steps.empty()) throw NoWitness("trace has no merge");
  const MergeStep& last = trace.steps.back();
  if (trace.all_sets[std::size_t(last.result)].sites.size() <= 3) {
    throw NoWitness("final set has at most 3 sites");
  }
  return last.merged;
}

std::string to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::kSeed: return "seed";
    case VertexKind::kNormal: return "normal";
    case VertexKind::kSplitter: return "splitter";
  }
  return "unknown";
}

int Hierarchy::depth() const {
  std::function<int(int)> walk = [&](int v) {
    int best = 0;
    for (int ch : vertices[std::size_t(v)].children) best = std::max(best, 1 + walk(ch));
    return best;
  };
  return vertices.empty() ? 0 : walk(0);
}

namespace {

class HierarchyBuilder {
 public:
  HierarchyBuilder(const SpanningTrace& trace, int t) : trace_(trace), t_(t) { out_.precision = t; }

  Hierarchy build(int root_set) {
    grow(root_set, -1);
    return std::move(out_);
  }

 private:
  Rect rect_of(int id) const { return bounding_rect(trace_.all_sets[std::size_t(id)].sites); }
  const std::vector<int>& parts(int id) const { return trace_.all_sets[std::size_t(id)].parts; }

  int add_vertex(Rect label, VertexKind kind, int parent) {
    out_.vertices.push_back({label, kind, parent, {}});
    int v = int(out_.vertices.size()) - 1;
    if (parent >= 0) out_.vertices[std::size_t(parent)].children.push_back(v);
    return v;
  }

  void grow(int id, int parent) {
    const Rect r = rect_of(id);
    if (r.y() < 2 * t_) {
      add_vertex(r, VertexKind::kSeed, parent);
      return;
    }
    // Walk down the merge tree level by level until some set's height drops
    // by more than t. `origin[i]` is the set level[i] descends from.
    std::vector<int> level = parts(id);
    std::vector<int> origin(level.size(), id);
    int depth = 1;
    for (;;) {
      auto lowest = std::min_element(level.begin(), level.end(),
                                     [&](int a, int b) { return rect_of(a).y() < rect_of(b).y(); });
      if (r.y() - rect_of(*lowest).y() > t_) break;
      std::vector<int> next, next_origin;
      for (int s : level) {
        if (parts(s).empty()) {
          next.push_back(s);
          next_origin.push_back(s);
        } else {
          for (int q : parts(s)) {
            next.push_back(q);
            next_origin.push_back(s);
          }
        }
      }
      level = std::move(next);
      origin = std::move(next_origin);
      ++depth;
    }
    auto lowest = std::min_element(level.begin(), level.end(),
                                   [&](int a, int b) { return rect_of(a).y() < rect_of(b).y(); });
    const int smallest = *lowest;
    const int drop = r.y() - rect_of(smallest).y();

    if (drop <= 2 * t_) {
      int v = add_vertex(r, VertexKind::kNormal, parent);
      grow(smallest, v);
      return;
    }
    if (depth >= 2) {
      const int creator = origin[std::size_t(lowest - level.begin())];
      const Rect rc = rect_of(creator);
      if (rc.y() >= 2 * t_) {
        int v = add_vertex(r, VertexKind::kNormal, parent);
        int w = add_vertex(rc, VertexKind::kSplitter, v);
        for (int q : parts(creator)) grow(q, w);
        return;
      }
    }
    // Split directly into the current level: some part drops by more than 2t.
    int v = add_vertex(r, VertexKind::kSplitter, parent);
    for (int q : level) grow(q, v);
  }

  const SpanningTrace& trace_;
  int t_;
  Hierarchy out_;
};

}  // namespace

Hierarchy build_hierarchy(const SiteSet& generators, int t, const NeighborhoodSpec& spec) {
  if (t < 1) throw std::invalid_argument("precision t must be >= 1");
  if (generators.empty()) throw std::invalid_argument("hierarchy needs a non-empty generator set");
  SiteSet sorted = generators;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Configuration c(bounding_rect(sorted), sorted);
  if (connected_components(closure(c, spec), spec).size() != 1) {
    throw std::invalid_argument("closure of the generators is not connected");
  }
  SpanningTrace trace = disjoint_spanning(c, spec);
  if (trace.final_sets.size() != 1) throw std::logic_error("connected closure did not merge into one set");
  return HierarchyBuilder(trace, t).build(trace.final_sets.front());
}

bool validate_hierarchy(const Hierarchy& h, int t) {
  if (h.vertices.empty() || t < 1) return false;
  for (const auto& v : h.vertices) {
    const int y = v.label.y();
    const std::size_t kids = v.children.size();
    switch (v.kind) {
      case VertexKind::kSeed:
        if (kids != 0 || y >= 2 * t) return false;
        break;
      case VertexKind::kNormal:
      case VertexKind::kSplitter:
        if (y < 2 * t) return false;
        if (v.kind == VertexKind::kNormal ? kids != 1 : kids < 2) return false;
        break;
    }
    bool some_big_drop = false;
    for (int ch : v.children) {
      if (ch <= 0 || std::size_t(ch) >= h.vertices.size()) return false;
      const auto& child = h.vertices[std::size_t(ch)];
      if (!v.label.contains(child.label)) return false;
      const int drop = y - child.label.y();
      if (drop > t) some_big_drop = true;
      if (v.kind == VertexKind::kNormal) {
        if (drop > 2 * t) return false;
        if (child.kind != VertexKind::kSplitter && drop <= t) return false;
      }
    }
    if (v.kind == VertexKind::kSplitter && !some_big_drop) return false;
  }
  return true;
}

}  // namespace abp::decomposition
