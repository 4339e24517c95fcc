// Copyright 2026 The lwplan Authors
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

#ifndef LWPLAN_RANDOM_HPP
#define LWPLAN_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lwplan::rng {

// Counter-based draws: every value is a pure function of (seed, stream,
// counter), so results never depend on evaluation order.

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t Hash(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter, std::uint64_t salt = 0) {
  std::uint64_t h = SplitMix64(seed ^ 0x6A09E667F3BCC909ULL);
  h = SplitMix64(h ^ stream);
  h = SplitMix64(h ^ counter);
  return SplitMix64(h ^ salt);
}

// Uniform in [0, 1) with 53 random bits.
constexpr double ToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double Uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                      std::uint64_t salt = 0) {
  return ToUnit(Hash(seed, stream, counter, salt));
}

// Standard normal via Box-Muller on two independent counter draws.
inline double StandardNormal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                             std::uint64_t salt = 0) {
  double u1 = Uniform(seed, stream, counter, salt * 2 + 1);
  double u2 = Uniform(seed, stream, counter, salt * 2 + 2);
  u1 = 1.0 - u1;  // (0, 1]
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace lwplan::rng

#endif  // LWPLAN_RANDOM_HPP
