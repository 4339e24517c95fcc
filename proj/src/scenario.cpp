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

#include "lwplan/scenario.hpp"

#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "lwplan/error.hpp"
#include "lwplan/random.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

using nlohmann::json;

double Distance3d(const Position& a, const Position& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m, a.z_m - b.z_m);
}

double Distance2d(const Position& a, const Position& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

Scenario BuildGrid(const Position& origin, std::size_t nx, std::size_t ny, double spacing_m,
                   double gw_height_m, std::vector<Position> ed_layout) {
  if (nx == 0 || ny == 0) Fail(ErrorCode::kValidation, "grid needs nx*ny >= 1");
  if (!(spacing_m > 0.0)) Fail(ErrorCode::kValidation, "spacing_m must be positive");
  if (!(gw_height_m > 0.0)) Fail(ErrorCode::kValidation, "gw_height_m must be positive");

  Scenario s;
  s.gw_candidates.reserve(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      s.gw_candidates.push_back({origin.x_m + static_cast<double>(ix) * spacing_m,
                                 origin.y_m + static_cast<double>(iy) * spacing_m, gw_height_m});
    }
  }
  s.eds = std::move(ed_layout);
  s.grid_meta = GridMeta{origin.x_m, origin.y_m, nx, ny, spacing_m};
  return s;
}

namespace {

void CheckPosition(const Position& p, const std::string& where) {
  if (!std::isfinite(p.x_m) || !std::isfinite(p.y_m) || !std::isfinite(p.z_m)) {
    Fail(ErrorCode::kValidation, where + ": coordinates must be finite");
  }
  if (!(p.z_m > 0.0)) Fail(ErrorCode::kValidation, where + ": z_m must be > 0");
}

Position PositionFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    Fail(ErrorCode::kParse, where + ": expected [x, y, z]");
  }
  for (const auto& v : j) {
    if (!v.is_number()) Fail(ErrorCode::kParse, where + ": coordinates must be numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Position> PositionsFromJson(const json& root, const char* field) {
  if (!root.contains(field)) Fail(ErrorCode::kParse, std::string("missing field '") + field + "'");
  const auto& arr = root.at(field);
  if (!arr.is_array()) Fail(ErrorCode::kParse, std::string(field) + " must be an array");
  std::vector<Position> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(PositionFromJson(arr[i], std::string(field) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

void ValidateScenario(const Scenario& s) {
  if (s.gw_candidates.empty()) Fail(ErrorCode::kValidation, "gw_candidates must be non-empty");
  if (s.eds.empty()) Fail(ErrorCode::kValidation, "eds must be non-empty");
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < s.gw_candidates.size(); ++i) {
    const auto& p = s.gw_candidates[i];
    CheckPosition(p, "gw_candidates[" + std::to_string(i) + "]");
    if (!seen.emplace(p.x_m, p.y_m).second) {
      Fail(ErrorCode::kValidation, "gw_candidates[" + std::to_string(i) +
                                       "]: duplicate candidate coordinates (" +
                                       io::FormatDouble(p.x_m) + ", " + io::FormatDouble(p.y_m) +
                                       ")");
    }
  }
  for (std::size_t i = 0; i < s.eds.size(); ++i) {
    CheckPosition(s.eds[i], "eds[" + std::to_string(i) + "]");
  }
}

Scenario ParseScenarioJson(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  if (!root.is_object()) Fail(ErrorCode::kParse, "scenario: top level must be an object");

  Scenario s;
  s.gw_candidates = PositionsFromJson(root, "gw_candidates");
  s.eds = PositionsFromJson(root, "eds");
  if (root.contains("grid_meta") && !root["grid_meta"].is_null()) {
    const auto& g = root["grid_meta"];
    try {
      GridMeta meta;
      const auto& origin = g.at("origin");
      meta.origin_x_m = origin.at(0).get<double>();
      meta.origin_y_m = origin.at(1).get<double>();
      meta.nx = g.at("nx").get<std::size_t>();
      meta.ny = g.at("ny").get<std::size_t>();
      meta.spacing_m = g.at("spacing_m").get<double>();
      s.grid_meta = meta;
    } catch (const json::exception& e) {
      Fail(ErrorCode::kParse, std::string("grid_meta: ") + e.what());
    }
  }
  ValidateScenario(s);
  return s;
}

std::string ScenarioToJson(const Scenario& s) {
  auto positions = [](const std::vector<Position>& v) {
    json arr = json::array();
    for (const auto& p : v) arr.push_back({p.x_m, p.y_m, p.z_m});
    return arr;
  };
  json root;
  root["gw_candidates"] = positions(s.gw_candidates);
  root["eds"] = positions(s.eds);
  if (s.grid_meta) {
    const auto& g = *s.grid_meta;
    root["grid_meta"] = {{"origin", {g.origin_x_m, g.origin_y_m}},
                         {"nx", g.nx},
                         {"ny", g.ny},
                         {"spacing_m", g.spacing_m}};
  }
  return root.dump(1) + "\n";
}

Scenario LoadScenario(const std::filesystem::path& path) {
  return ParseScenarioJson(io::ReadFile(path));
}

void SaveScenario(const Scenario& s, const std::filesystem::path& path) {
  ValidateScenario(s);
  io::WriteFile(path, ScenarioToJson(s));
}

Scenario ReplicationFixture(std::uint64_t seed) {
  constexpr std::size_t kLattice = 90;  // 450 m / 5 m
  constexpr double kCell = 5.0;
  constexpr double kEdHeight = 1.4;

  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<Position> eds;
  std::uint64_t counter = 0;
  while (eds.size() < kReplicationEdCount) {
    auto h = rng::Hash(seed, 0, counter++);
    std::size_t ix = static_cast<std::size_t>((h >> 32) % kLattice);
    std::size_t iy = static_cast<std::size_t>((h & 0xFFFFFFFFULL) % kLattice);
    if (!used.emplace(ix, iy).second) continue;
    eds.push_back({kCell / 2 + kCell * static_cast<double>(ix),
                   kCell / 2 + kCell * static_cast<double>(iy), kEdHeight});
  }
  return BuildGrid({0.0, 0.0, 0.0}, 10, 10, 50.0, 30.0, std::move(eds));
}

}  // namespace lwplan
