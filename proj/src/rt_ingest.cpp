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

#include "lwplan/rt_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "lwplan/error.hpp"
#include "lwplan/random.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

using nlohmann::json;

namespace {

constexpr double kAlignTolerance = 1e-6;  // in cells
constexpr std::uint64_t kPerturbationStream = 0x52545045ULL;

// Smallest positive gap between consecutive distinct sorted values.
std::optional<double> MinGap(const std::set<double>& sorted) {
  std::optional<double> gap;
  double prev = 0.0;
  bool first = true;
  for (double v : sorted) {
    if (!first) {
      double g = v - prev;
      if (!gap || g < *gap) gap = g;
    }
    prev = v;
    first = false;
  }
  return gap;
}

std::size_t CellIndex(double coord, double origin, double cell, const std::string& where) {
  double t = (coord - origin) / cell;
  double r = std::round(t);
  if (std::abs(t - r) > kAlignTolerance || r < 0) {
    Fail(ErrorCode::kParse, where + ": coordinate " + io::FormatDouble(coord) +
                                " is not on the raster lattice");
  }
  return static_cast<std::size_t>(r);
}

std::optional<RasterSpec> ReadMeta(const std::filesystem::path& dir) {
  auto meta_path = dir / "meta.json";
  if (!std::filesystem::exists(meta_path)) return std::nullopt;
  try {
    auto j = json::parse(io::ReadFile(meta_path));
    RasterSpec spec;
    spec.cell_size_m = j.at("cell_size_m").get<double>();
    spec.origin_x_m = j.at("origin").at(0).get<double>();
    spec.origin_y_m = j.at("origin").at(1).get<double>();
    if (!(spec.cell_size_m > 0.0)) Fail(ErrorCode::kParse, "meta.json: cell_size_m must be > 0");
    spec.nx = j.contains("nx") ? j["nx"].get<std::size_t>() : 0;
    spec.ny = j.contains("ny") ? j["ny"].get<std::size_t>() : 0;
    return spec;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("meta.json: ") + e.what());
  }
}

}  // namespace

GainMap ParseGainMapCsv(const std::string& text, std::size_t gw_index,
                        const std::optional<RasterSpec>& meta, const std::string& name) {
  auto lines = io::SplitLines(text);
  if (lines.empty() || lines[0] != "x_m,y_m,gain_db") {
    Fail(ErrorCode::kParse, name + ": expected header 'x_m,y_m,gain_db'");
  }
  struct Cell {
    double x, y, gain;
    std::size_t row;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::string where = name + " row " + std::to_string(i + 1);
    auto f = io::SplitCsvLine(lines[i]);
    if (f.size() != 3) Fail(ErrorCode::kParse, where + ": expected 3 fields");
    Cell c{io::ParseDouble(f[0], where), io::ParseDouble(f[1], where),
           io::ParseDouble(f[2], where), i + 1};
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
      Fail(ErrorCode::kParse, where + ": cell coordinates must be finite");
    }
    if (c.gain == INFINITY) Fail(ErrorCode::kParse, where + ": gain must not be +inf");
    cells.push_back(c);
  }
  if (cells.empty()) Fail(ErrorCode::kParse, name + ": no cells");

  std::set<double> xs, ys;
  for (const auto& c : cells) {
    xs.insert(c.x);
    ys.insert(c.y);
  }

  RasterSpec spec;
  if (meta) {
    spec = *meta;
  } else {
    auto gx = MinGap(xs);
    auto gy = MinGap(ys);
    if (!gx && !gy) {
      Fail(ErrorCode::kParse, name + ": cannot infer cell size from a single cell; add meta.json");
    }
    spec.cell_size_m = gx && gy ? std::min(*gx, *gy) : (gx ? *gx : *gy);
    spec.origin_x_m = *xs.begin();
    spec.origin_y_m = *ys.begin();
    spec.nx = 0;
    spec.ny = 0;
  }

  std::size_t max_ix = 0, max_iy = 0;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  idx.reserve(cells.size());
  for (const auto& c : cells) {
    std::string where = name + " row " + std::to_string(c.row);
    auto ix = CellIndex(c.x, spec.origin_x_m, spec.cell_size_m, where);
    auto iy = CellIndex(c.y, spec.origin_y_m, spec.cell_size_m, where);
    max_ix = std::max(max_ix, ix);
    max_iy = std::max(max_iy, iy);
    idx.emplace_back(ix, iy);
  }
  if (spec.nx == 0) spec.nx = max_ix + 1;
  if (spec.ny == 0) spec.ny = max_iy + 1;
  if (max_ix >= spec.nx || max_iy >= spec.ny) {
    Fail(ErrorCode::kParse, name + ": cells fall outside the raster declared in meta.json");
  }

  GainMap map;
  map.raster = spec;
  map.gw_index = gw_index;
  map.values.assign(spec.nx * spec.ny, -INFINITY);
  std::vector<std::uint8_t> seen(spec.nx * spec.ny, 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto k = idx[i].second * spec.nx + idx[i].first;
    if (seen[k]) {
      Fail(ErrorCode::kParse, name + " row " + std::to_string(cells[i].row) + ": duplicate cell");
    }
    seen[k] = 1;
    map.values[k] = cells[i].gain;
  }
  return map;
}

GainMap LoadGainMap(const std::filesystem::path& path, std::size_t gw_index) {
  auto meta = ReadMeta(path.parent_path().empty() ? "." : path.parent_path());
  return ParseGainMapCsv(io::ReadFile(path), gw_index, meta, path.filename().string());
}

double SampleGain(const GainMap& map, const Position& pos) {
  const auto& r = map.raster;
  double tx = (pos.x_m - r.origin_x_m) / r.cell_size_m;
  double ty = (pos.y_m - r.origin_y_m) / r.cell_size_m;
  double hx = static_cast<double>(r.nx) - 0.5;
  double hy = static_cast<double>(r.ny) - 0.5;
  if (!(tx >= -0.5 && tx <= hx && ty >= -0.5 && ty <= hy)) {
    auto lo_x = r.origin_x_m - r.cell_size_m / 2, lo_y = r.origin_y_m - r.cell_size_m / 2;
    Fail(ErrorCode::kBounds,
         "position (" + io::FormatDouble(pos.x_m) + ", " + io::FormatDouble(pos.y_m) +
             ") outside map gw_" + std::to_string(map.gw_index) + " extents x [" +
             io::FormatDouble(lo_x) + ", " + io::FormatDouble(lo_x + r.nx * r.cell_size_m) +
             "], y [" + io::FormatDouble(lo_y) + ", " +
             io::FormatDouble(lo_y + r.ny * r.cell_size_m) + "]");
  }
  // ceil(t - 0.5) rounds halves down, i.e. toward the lower cell.
  auto pick = [](double t, std::size_t n) {
    double i = std::ceil(t - 0.5);
    return static_cast<std::size_t>(std::clamp(i, 0.0, static_cast<double>(n - 1)));
  };
  return map.at(pick(tx, r.nx), pick(ty, r.ny));
}

std::filesystem::path GainMapFileName(std::size_t gw_index) {
  return "gw_" + std::to_string(gw_index) + ".csv";
}

GainMatrix BuildAlphaFromMaps(const std::filesystem::path& dir, const Scenario& scenario,
                              double tx_power_dbm) {
  ValidateScenario(scenario);
  if (!std::filesystem::is_directory(dir)) {
    Fail(ErrorCode::kIo, "rt directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::size_t> missing;
  for (std::size_t p = 1; p <= scenario.num_candidates(); ++p) {
    if (!std::filesystem::is_regular_file(dir / GainMapFileName(p))) missing.push_back(p);
  }
  if (!missing.empty()) {
    std::string list;
    for (auto p : missing) list += (list.empty() ? "" : ", ") + std::to_string(p);
    Fail(ErrorCode::kIo, "rt directory '" + dir.string() + "' lacks maps for candidates: " + list);
  }

  auto meta = ReadMeta(dir);
  GainMatrix alpha(scenario.num_eds(), scenario.num_candidates());
  alpha.tx_power_dbm = tx_power_dbm;
  alpha.source = "rt:" + dir.string();
  for (std::size_t p = 0; p < scenario.num_candidates(); ++p) {
    auto file = dir / GainMapFileName(p + 1);
    auto map = ParseGainMapCsv(io::ReadFile(file), p + 1, meta, file.filename().string());
    for (std::size_t d = 0; d < scenario.num_eds(); ++d) {
      double gain;
      try {
        gain = SampleGain(map, scenario.eds[d]);
      } catch (const Error& e) {
        Fail(ErrorCode::kBounds, "ed " + std::to_string(d + 1) + ", candidate " +
                                     std::to_string(p + 1) + ": " + e.what());
      }
      alpha.at(d, p) = tx_power_dbm + gain;
    }
  }
  return alpha;
}

RasterSpec RasterForDevices(const Scenario& scenario, double cell_size_m) {
  if (!(cell_size_m > 0.0)) Fail(ErrorCode::kValidation, "cell_size_m must be > 0");
  double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
  for (const auto& e : scenario.eds) {
    min_x = std::min(min_x, e.x_m);
    min_y = std::min(min_y, e.y_m);
    max_x = std::max(max_x, e.x_m);
    max_y = std::max(max_y, e.y_m);
  }
  RasterSpec r;
  r.origin_x_m = min_x;
  r.origin_y_m = min_y;
  r.cell_size_m = cell_size_m;
  r.nx = static_cast<std::size_t>(std::ceil((max_x - min_x) / cell_size_m - kAlignTolerance)) + 1;
  r.ny = static_cast<std::size_t>(std::ceil((max_y - min_y) / cell_size_m - kAlignTolerance)) + 1;
  return r;
}

void SynthesizeGainMaps(const Scenario& scenario, const ChannelConfig& cfg,
                        const RasterSpec& raster, double rx_height_m,
                        const std::filesystem::path& dir, double perturbation_sigma_db,
                        std::uint64_t seed) {
  ValidateScenario(scenario);
  ValidateChannelConfig(cfg);
  std::filesystem::create_directories(dir);
  json meta = {{"cell_size_m", raster.cell_size_m},
               {"origin", {raster.origin_x_m, raster.origin_y_m}},
               {"nx", raster.nx},
               {"ny", raster.ny}};
  io::WriteFile(dir / "meta.json", meta.dump() + "\n");

  for (std::size_t p = 0; p < scenario.num_candidates(); ++p) {
    const auto& gw = scenario.gw_candidates[p];
    std::string out = "x_m,y_m,gain_db\n";
    for (std::size_t iy = 0; iy < raster.ny; ++iy) {
      for (std::size_t ix = 0; ix < raster.nx; ++ix) {
        Position cell{raster.origin_x_m + static_cast<double>(ix) * raster.cell_size_m,
                      raster.origin_y_m + static_cast<double>(iy) * raster.cell_size_m,
                      rx_height_m};
        std::size_t cell_id = iy * raster.nx + ix;
        double gain = -LinkPathLoss(cfg, cell, gw, cell_id, p);
        if (perturbation_sigma_db > 0.0) {
          gain += perturbation_sigma_db *
                  rng::StandardNormal(seed, kPerturbationStream, LinkKey(cell_id, p));
        }
        out += io::FormatDouble(cell.x_m) + ',' + io::FormatDouble(cell.y_m) + ',' +
               io::FormatDouble(gain) + '\n';
      }
    }
    io::WriteFile(dir / GainMapFileName(p + 1), out);
  }
}

}  // namespace lwplan
