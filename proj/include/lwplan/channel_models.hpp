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

#ifndef LWPLAN_CHANNEL_MODELS_HPP
#define LWPLAN_CHANNEL_MODELS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lwplan/scenario.hpp"

namespace lwplan {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class ChannelModel { kLogDistance, kOkumuraHata, kCost231, kUma3gpp };
enum class Environment { kUrbanSmallMedium, kUrbanLarge, kSuburban };
enum class LosMode { kAlwaysLos, kAlwaysNlos, kProbabilistic };

std::string_view ToString(ChannelModel model);
std::string_view ToString(Environment env);
std::string_view ToString(LosMode mode);
ChannelModel ParseChannelModel(std::string_view name);
Environment ParseEnvironment(std::string_view name);
LosMode ParseLosMode(std::string_view name);

struct ChannelConfig {
  ChannelModel model = ChannelModel::kLogDistance;
  double fc_hz = 1e9;
  // log-distance
  double exponent = 3.76;
  double d0_m = 32.0;
  std::optional<double> ref_loss_db;  // unset: free-space loss at d0
  // Hata / COST-231
  Environment environment = Environment::kUrbanSmallMedium;
  double city_correction_db = 0.0;
  // 3GPP UMa
  LosMode los_mode = LosMode::kAlwaysNlos;
  std::uint64_t los_seed = 0;
  // log-normal shadowing, off by default
  double shadowing_sigma_db = 0.0;
  std::uint64_t shadowing_seed = 0;
};

void ValidateChannelConfig(const ChannelConfig& cfg);

// JSON object with keys named after the fields above ("model", "fc_hz",
// "exponent", "d0_m", "ref_loss_db", "environment", "city_correction_db",
// "los_mode", "los_seed", "shadowing_sigma_db", "shadowing_seed"). Missing
// keys keep their defaults.
ChannelConfig ParseChannelConfigJson(const std::string& text);
std::string ChannelConfigToJson(const ChannelConfig& cfg);

double FreeSpacePathLoss(double d_m, double fc_hz);

// Clamped to the reference loss below d0.
double LogDistancePathLoss(double d_m, double fc_hz, double exponent, double d0_m,
                           std::optional<double> ref_loss_db = std::nullopt);

// Mobile antenna correction a(hm) of the Hata family.
double HataMobileCorrection(double f_mhz, double hm_m, Environment env);

double OkumuraHataPathLoss(double d2d_m, double fc_hz, double hb_m, double hm_m, Environment env);
double Cost231PathLoss(double d2d_m, double fc_hz, double hb_m, double hm_m, Environment env,
                       double city_correction_db);

// TR 38.901 UMa line-of-sight probability for h_ut <= 13 m.
double UmaLosProbability(double d2d_m, double h_ut_m);

// Breakpoint distance with effective environment height 1 m.
double UmaBreakpointDistance(double h_bs_m, double h_ut_m, double fc_hz);

double UmaLosPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m);
double UmaNlosPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m);

// `link_key` identifies the (ED, candidate) pair for probabilistic LOS; the
// draw is a pure function of (seed, link_key).
double Uma3gppPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m, LosMode mode,
                       std::uint64_t seed = 0, std::uint64_t link_key = 0);

double ReceivedPower(double tx_power_dbm, double pl_db, double shadowing_draw_db = 0.0);

// Validity-range notes for `cfg` applied to this link; empty when in range.
std::vector<std::string> ValidityWarnings(const ChannelConfig& cfg, const Position& ed,
                                          const Position& gw);

// Path loss of the link from candidate `gw` to device `ed`, with the
// per-model distance convention applied.
double LinkPathLoss(const ChannelConfig& cfg, const Position& ed, const Position& gw,
                    std::size_t ed_index, std::size_t gw_index);

// Zero-mean log-normal shadowing term for link (ed_index, gw_index); 0 when
// sigma is 0.
double ShadowingDraw(const ChannelConfig& cfg, std::size_t ed_index, std::size_t gw_index);

inline std::uint64_t LinkKey(std::size_t ed_index, std::size_t gw_index) {
  return (static_cast<std::uint64_t>(ed_index) << 32) ^ static_cast<std::uint64_t>(gw_index);
}

}  // namespace lwplan

#endif  // LWPLAN_CHANNEL_MODELS_HPP
