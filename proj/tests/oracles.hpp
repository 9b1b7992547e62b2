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

// Slow, direct reimplementations used as ground truth in the tests. None of
// these call into the library beyond plain data types.

#ifndef ABP_TESTS_ORACLES_HPP_
#define ABP_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "abp/lattice.hpp"

namespace oracle {

using abp::Rect;
using abp::Site;
using SiteSet = std::set<Site>;

/// Offsets of the anisotropic neighborhood with horizontal reach k.
inline std::vector<Site> offsets(int k) {
  std::vector<Site> out;
  for (int i = 1; i <= k; ++i) {
    out.push_back({i, 0});
    out.push_back({-i, 0});
  }
  out.push_back({0, 1});
  out.push_back({0, -1});
  return out;
}

inline bool inside(const Rect& r, Site s) { return s.m >= r.a && s.m <= r.b && s.n >= r.c && s.n <= r.d; }

/// Repeated synchronous sweeps until nothing changes. `extra` counts as
/// occupied but lies outside the window.
inline SiteSet closure(SiteSet occ, const Rect& window, int k,
                       const std::function<bool(Site)>& extra = nullptr) {
  const auto offs = offsets(k);
  for (;;) {
    std::vector<Site> born;
    for (int n = window.c; n <= window.d; ++n) {
      for (int m = window.a; m <= window.b; ++m) {
        Site s{m, n};
        if (occ.count(s)) continue;
        int count = 0;
        for (Site o : offs) {
          Site t{m + o.m, n + o.n};
          if (occ.count(t) || (extra && !inside(window, t) && extra(t))) ++count;
        }
        if (count >= k + 1) born.push_back(s);
      }
    }
    if (born.empty()) return occ;
    occ.insert(born.begin(), born.end());
  }
}

/// Sweep index at which each window site first becomes occupied; -1 if never.
inline std::map<Site, std::int64_t> times(const SiteSet& initial, const Rect& window, int k) {
  std::map<Site, std::int64_t> out;
  SiteSet occ = initial;
  for (Site s : occ) out[s] = 0;
  const auto offs = offsets(k);
  for (std::int64_t t = 1;; ++t) {
    std::vector<Site> born;
    for (int n = window.c; n <= window.d; ++n) {
      for (int m = window.a; m <= window.b; ++m) {
        Site s{m, n};
        if (occ.count(s)) continue;
        int count = 0;
        for (Site o : offs) count += occ.count({m + o.m, n + o.n}) ? 1 : 0;
        if (count >= k + 1) born.push_back(s);
      }
    }
    if (born.empty()) break;
    for (Site s : born) {
      occ.insert(s);
      out[s] = t;
    }
  }
  return out;
}

/// Components under "s ~ t iff t - s is one of `diffs`", by breadth-first search.
inline std::vector<SiteSet> components(const SiteSet& occ, const std::vector<Site>& diffs) {
  std::vector<SiteSet> out;
  SiteSet seen;
  for (Site s : occ) {
    if (seen.count(s)) continue;
    SiteSet comp;
    std::queue<Site> q;
    q.push(s);
    seen.insert(s);
    while (!q.empty()) {
      Site u = q.front();
      q.pop();
      comp.insert(u);
      for (Site d : diffs) {
        for (int sign : {1, -1}) {
          Site v{u.m + sign * d.m, u.n + sign * d.n};
          if (occ.count(v) && !seen.count(v)) {
            seen.insert(v);
            q.push(v);
          }
        }
      }
    }
    out.push_back(comp);
  }
  return out;
}

/// Two sites are weakly connected iff both lie in some z + N.
inline bool weakly_linked(Site s, Site t, int k) {
  if (s == t) return false;
  const auto offs = offsets(k);
  for (Site o1 : offs) {
    Site z{s.m - o1.m, s.n - o1.n};
    for (Site o2 : offs) {
      if (Site{z.m + o2.m, z.n + o2.n} == t) return true;
    }
  }
  return false;
}

/// Probability that a row of x independent sites, each occupied with
/// probability u, has no run of `gap` vacant sites. Sum over all 2^x rows.
inline double no_gap_by_enumeration(double u, int x, int gap) {
  long double total = 0;
  for (std::uint32_t mask = 0; mask < (1u << x); ++mask) {
    int run = 0;
    bool ok = true;
    for (int i = 0; i < x && ok; ++i) {
      run = (mask >> i & 1u) ? 0 : run + 1;
      if (run >= gap) ok = false;
    }
    if (!ok) continue;
    long double w = 1;
    for (int i = 0; i < x; ++i) w *= (mask >> i & 1u) ? u : 1 - u;
    total += w;
  }
  return double(total);
}

/// Root in (0,1] of lambda^3 = u lambda^2 + u v lambda + u v^2, v = 1 - u,
/// by plain bisection in long double.
inline long double alpha_by_bisection(long double u) {
  const long double v = 1 - u;
  auto f = [&](long double l) { return l * l * l - u * l * l - u * v * l - u * v * v; };
  long double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

/// Rectangle with random position and at most `max_sites` sites.
inline Rect random_rect(std::mt19937_64& rng, int max_sites, int min_rows = 1) {
  for (;;) {
    int rows = std::uniform_int_distribution<int>(min_rows, max_sites)(rng);
    int max_cols = max_sites / rows;
    if (max_cols < 1) continue;
    int cols = std::uniform_int_distribution<int>(1, max_cols)(rng);
    int a = std::uniform_int_distribution<int>(-3, 3)(rng);
    int c = std::uniform_int_distribution<int>(-3, 3)(rng);
    return {a, a + cols - 1, c, c + rows - 1};
  }
}

inline SiteSet random_sites(std::mt19937_64& rng, const Rect& r, double p) {
  SiteSet out;
  std::bernoulli_distribution coin(p);
  for (int n = r.c; n <= r.d; ++n) {
    for (int m = r.a; m <= r.b; ++m) {
      if (coin(rng)) out.insert({m, n});
    }
  }
  return out;
}

}  // namespace oracle

#endif  // ABP_TESTS_ORACLES_HPP_
