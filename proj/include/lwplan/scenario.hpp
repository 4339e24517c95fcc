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

#ifndef LWPLAN_SCENARIO_HPP
#define LWPLAN_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lwplan {

struct Position {
  double x_m = 0.0;
  double y_m = 0.0;
  double z_m = 0.0;  // height above ground

  friend bool operator==(const Position&, const Position&) = default;
};

struct GridMeta {
  double origin_x_m = 0.0;
  double origin_y_m = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  double spacing_m = 0.0;

  friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

// Candidate gateway positions and end devices. Index p (resp. d) of the
// 1-based file formats is position p-1 (d-1) in these vectors.
struct Scenario {
  std::vector<Position> gw_candidates;
  std::vector<Position> eds;
  std::optional<GridMeta> grid_meta;

  std::size_t num_candidates() const { return gw_candidates.size(); }
  std::size_t num_eds() const { return eds.size(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

double Distance3d(const Position& a, const Position& b);
double Distance2d(const Position& a, const Position& b);

// Row-major grid from `origin` (x fastest); candidate 1 sits on the origin.
Scenario BuildGrid(const Position& origin, std::size_t nx, std::size_t ny, double spacing_m,
                   double gw_height_m, std::vector<Position> ed_layout);

// Throws a validation error describing the first violated invariant.
void ValidateScenario(const Scenario& scenario);

Scenario ParseScenarioJson(const std::string& text);
std::string ScenarioToJson(const Scenario& scenario);
Scenario LoadScenario(const std::filesystem::path& path);
void SaveScenario(const Scenario& scenario, const std::filesystem::path& path);

inline constexpr std::uint64_t kReplicationSeed = 20250901;
inline constexpr std::size_t kReplicationEdCount = 54;

// 10x10 candidates at 50 m spacing and 30 m height, plus 54 devices at
// 1.4 m drawn without replacement from the 5 m cell-centre lattice covering
// the 450x450 m grid hull. Lattice points never coincide with a candidate
// in the horizontal plane.
Scenario ReplicationFixture(std::uint64_t seed = kReplicationSeed);

}  // namespace lwplan

#endif  // LWPLAN_SCENARIO_HPP
