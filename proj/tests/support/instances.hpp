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

// Seeded random instances shared by the unit and acceptance suites.

#ifndef LWPLAN_TESTS_INSTANCES_HPP
#define LWPLAN_TESTS_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "lwplan/coverage.hpp"

namespace lwplan::testing {

// Each entry is set with probability `density`.
inline CoverageMatrix RandomBeta(std::uint64_t seed, std::size_t eds, std::size_t candidates,
                                 double density) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution bit(density);
  CoverageMatrix beta(eds, candidates, 0.0);
  for (std::size_t d = 0; d < eds; ++d) {
    for (std::size_t p = 0; p < candidates; ++p) beta.set(d, p, bit(gen));
  }
  return beta;
}

// Dimensions and density drawn from the seed too.
inline CoverageMatrix RandomInstance(std::uint64_t seed, std::size_t max_eds,
                                     std::size_t max_candidates) {
  std::mt19937_64 gen(seed * 7919 + 17);
  std::uniform_int_distribution<std::size_t> eds(1, max_eds);
  std::uniform_int_distribution<std::size_t> cands(std::min<std::size_t>(4, max_candidates), max_candidates);
  std::uniform_real_distribution<double> density(0.15, 0.5);
  std::size_t d = eds(gen);
  std::size_t p = cands(gen);
  return RandomBeta(gen(), d, p, density(gen));
}

inline GainMatrix RandomAlpha(std::uint64_t seed, std::size_t eds, std::size_t candidates,
                              double lo = -140.0, double hi = -60.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  GainMatrix alpha(eds, candidates);
  for (std::size_t d = 0; d < eds; ++d) {
    for (std::size_t p = 0; p < candidates; ++p) alpha.at(d, p) = u(gen);
  }
  return alpha;
}

}  // namespace lwplan::testing

#endif  // LWPLAN_TESTS_INSTANCES_HPP
