//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cassert>
#include <cstdint>

namespace agora {

// PCG XSH-RR 64/32. The standard library distributions are not pinned down by
// the standard, so every draw the simulator makes goes through this class to
// keep transcripts reproducible across toolchains. One instance per run, never
// shared across threads.
class Pcg32 {
public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057b7ef767814fULL)
      : state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Uniform over [0, n). Rejection keeps it unbiased.
  int uniform_int(int n) {
    assert(n > 0);
    const auto bound = static_cast<std::uint32_t>(n);
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return static_cast<int>(r % bound);
    }
  }

  // Uniform over [0, 1).
  double uniform01() { return next_u32() * (1.0 / 4294967296.0); }

private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// splitmix64 finalizer; good avalanche for seed derivation and config hashing.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pure function of (base, population index, run index) so any single run can
// be reproduced in isolation.
inline std::uint64_t derive_run_seed(std::uint64_t base, std::uint64_t population,
                                     std::uint64_t run) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ (0x9e3779b97f4a7c15ULL + population));
  h = mix64(h ^ (0xc2b2ae3d27d4eb4fULL + run));
  return h;
}

}  // namespace agora
