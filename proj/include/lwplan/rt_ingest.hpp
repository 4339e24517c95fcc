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

#ifndef LWPLAN_RT_INGEST_HPP
#define LWPLAN_RT_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lwplan/channel_models.hpp"
#include "lwplan/coverage.hpp"
#include "lwplan/scenario.hpp"

namespace lwplan {

// Raster geometry of a coverage map. The origin is the centre of cell
// (0, 0); cell (ix, iy) is centred at origin + (ix, iy) * cell_size_m.
struct RasterSpec {
  double origin_x_m = 0.0;
  double origin_y_m = 0.0;
  double cell_size_m = 1.0;
  std::size_t nx = 1;
  std::size_t ny = 1;
};

// Path-gain raster exported for one gateway candidate. -inf marks cells no
// ray reached.
struct GainMap {
  RasterSpec raster;
  std::vector<double> values;  // ny rows of nx, row iy at [iy * nx, (iy + 1) * nx)
  std::size_t gw_index = 0;    // one-based candidate index

  double at(std::size_t ix, std::size_t iy) const { return values[iy * raster.nx + ix]; }
};

GainMap ParseGainMapCsv(const std::string& text, std::size_t gw_index,
                        const std::optional<RasterSpec>& meta = std::nullopt,
                        const std::string& name = "gain map");

// Reads `path`; picks up `meta.json` from the same directory when present.
GainMap LoadGainMap(const std::filesystem::path& path, std::size_t gw_index);

// Nearest cell centre; ties go to the lower x, then lower y cell.
double SampleGain(const GainMap& map, const Position& pos);

// Expects gw_1.csv ... gw_P.csv in `dir`.
GainMatrix BuildAlphaFromMaps(const std::filesystem::path& dir, const Scenario& scenario,
                              double tx_power_dbm);

std::filesystem::path GainMapFileName(std::size_t gw_index);

// Smallest raster of square `cell_size_m` cells whose lattice starts on the
// lowest device coordinates and spans every device.
RasterSpec RasterForDevices(const Scenario& scenario, double cell_size_m);

// Writes gw_<p>.csv for every candidate plus meta.json, with gain equal to
// the negated model path loss at each cell centre (height `rx_height_m`)
// plus an optional seeded zero-mean Gaussian perturbation.
void SynthesizeGainMaps(const Scenario& scenario, const ChannelConfig& cfg,
                        const RasterSpec& raster, double rx_height_m,
                        const std::filesystem::path& dir, double perturbation_sigma_db = 0.0,
                        std::uint64_t seed = 0);

}  // namespace lwplan

#endif  // LWPLAN_RT_INGEST_HPP
