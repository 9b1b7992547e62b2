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

#ifndef ABP_RNG_HPP_
#define ABP_RNG_HPP_

#include <cstdint>
#include <random>

namespace abp {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random stream for one trial. The state depends only on (seed, stream id),
/// so trials give the same draws regardless of scheduling.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(mix64(mix64(seed) ^ mix64(stream_id ^ 0x5851f42d4c957f2dULL))) {}

  /// Uniform in [0, 1) with 53 bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Draws addressed by lattice site instead of stream position, so every
/// window of the same field sees the same values at shared sites.
class SiteField {
 public:
  SiteField(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix64(mix64(seed) ^ mix64(stream_id ^ 0x2545f4914f6cdd1dULL))) {}

  std::uint64_t bits(std::int32_t m, std::int32_t n) const {
    const std::uint64_t cell = (std::uint64_t(std::uint32_t(m)) << 32) | std::uint32_t(n);
    return mix64(mix64(cell) ^ key_);
  }

 private:
  std::uint64_t key_;
};

}  // namespace abp

#endif  // ABP_RNG_HPP_
