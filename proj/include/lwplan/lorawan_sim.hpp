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

#ifndef LWPLAN_LORAWAN_SIM_HPP
#define LWPLAN_LORAWAN_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lwplan/coverage.hpp"
#include "lwplan/placement.hpp"
#include "lwplan/scenario.hpp"

namespace lwplan {

// Receiver sensitivity in dBm per (spreading factor, bandwidth).
class SensitivityTable {
 public:
  // SF7..SF12 at 125 kHz: -130.0 to -142.5 dBm in 2.5 dB steps.
  static SensitivityTable Defaults();

  void Set(int sf, double bandwidth_hz, double dbm) { entries_[{sf, bandwidth_hz}] = dbm; }
  double Lookup(int sf, double bandwidth_hz) const;

 private:
  std::map<std::pair<int, double>, double> entries_;
};

struct TrafficConfig {
  std::size_t packets_per_ed = 1000;
  int sf = 7;
  double bandwidth_hz = 125000.0;
  int coding_rate_denominator = 5;  // 4/5 .. 4/8
  std::size_t payload_bytes = 23;
  std::size_t preamble_symbols = 8;
  double duration_s = 600.0;
  std::size_t n_channels = 1;
  double capture_threshold_db = 6.0;
  std::size_t gw_demod_paths = 8;
  std::optional<double> duty_cycle_limit;
  std::uint64_t seed = 1;
  SensitivityTable sensitivity = SensitivityTable::Defaults();
  // First-packet offset per device in seconds; empty draws a uniform offset
  // within one period.
  std::vector<double> fixed_offsets_s;
};

void ValidateTrafficConfig(const TrafficConfig& cfg);

// Keys mirror the field names; "sensitivity" is a list of
// {"sf", "bandwidth_hz", "dbm"} overrides.
TrafficConfig ParseTrafficConfigJson(const std::string& text);

double SymbolTime(int sf, double bandwidth_hz);

// LoRa airtime with explicit header and CRC; low data rate optimisation is
// enabled when the symbol time reaches 16 ms.
double TimeOnAir(const TrafficConfig& cfg);

double Sensitivity(int sf, double bandwidth_hz);

struct EdOutcome {
  std::size_t sent = 0;
  std::size_t delivered = 0;
  std::size_t collided = 0;
  std::size_t demod_blocked = 0;
  std::size_t below_sensitivity = 0;

  friend bool operator==(const EdOutcome&, const EdOutcome&) = default;
};

// An undelivered packet is counted once, under the first EdOutcome loss
// field (in declaration order) that applies at some selected gateway.
struct PdrReport {
  std::vector<EdOutcome> per_ed;
  double pdr_overall = 0.0;
  std::size_t collisions = 0;
  std::size_t below_sensitivity_drops = 0;
  std::size_t demod_blocked_drops = 0;
  std::uint64_t seed = 0;

  std::vector<double> pdr_per_ed() const;

  friend bool operator==(const PdrReport&, const PdrReport&) = default;
};

PdrReport RunSimulation(const Scenario& scenario, const PlacementSolution& placement,
                        const GainMatrix& alpha, const TrafficConfig& cfg);

double AvgPdr(std::span<const PdrReport> reports);

std::string PdrReportToJson(const PdrReport& report);
PdrReport ParsePdrReportJson(const std::string& text);
void SavePdrReport(const PdrReport& report, const std::filesystem::path& path);
PdrReport LoadPdrReport(const std::filesystem::path& path);

}  // namespace lwplan

#endif  // LWPLAN_LORAWAN_SIM_HPP
