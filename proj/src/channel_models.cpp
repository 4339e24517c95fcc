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

#include "lwplan/channel_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "lwplan/error.hpp"
#include "lwplan/random.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

using nlohmann::json;

namespace {

// Distances below this are evaluated at the floor for the Hata family and
// UMa, so coincident points never produce unbounded gain.
constexpr double kMinModelDistanceM = 1.0;

constexpr std::uint64_t kShadowingStream = 0x5348414430ULL;
constexpr std::uint64_t kLosStream = 0x4C4F5330ULL;

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    Fail(ErrorCode::kDomain, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

std::string_view ToString(ChannelModel model) {
  switch (model) {
    case ChannelModel::kLogDistance: return "log_distance";
    case ChannelModel::kOkumuraHata: return "okumura_hata";
    case ChannelModel::kCost231: return "cost231";
    case ChannelModel::kUma3gpp: return "uma_3gpp";
  }
  return "?";
}

std::string_view ToString(Environment env) {
  switch (env) {
    case Environment::kUrbanSmallMedium: return "urban_small_medium";
    case Environment::kUrbanLarge: return "urban_large";
    case Environment::kSuburban: return "suburban";
  }
  return "?";
}

std::string_view ToString(LosMode mode) {
  switch (mode) {
    case LosMode::kAlwaysLos: return "always_los";
    case LosMode::kAlwaysNlos: return "always_nlos";
    case LosMode::kProbabilistic: return "probabilistic";
  }
  return "?";
}

ChannelModel ParseChannelModel(std::string_view name) {
  for (auto m : {ChannelModel::kLogDistance, ChannelModel::kOkumuraHata, ChannelModel::kCost231,
                 ChannelModel::kUma3gpp}) {
    if (ToString(m) == name) return m;
  }
  Fail(ErrorCode::kValidation,
       "unknown channel model '" + std::string(name) +
           "' (expected log_distance, okumura_hata, cost231 or uma_3gpp)");
}

Environment ParseEnvironment(std::string_view name) {
  for (auto e : {Environment::kUrbanSmallMedium, Environment::kUrbanLarge, Environment::kSuburban}) {
    if (ToString(e) == name) return e;
  }
  Fail(ErrorCode::kValidation, "unknown environment '" + std::string(name) + "'");
}

LosMode ParseLosMode(std::string_view name) {
  for (auto m : {LosMode::kAlwaysLos, LosMode::kAlwaysNlos, LosMode::kProbabilistic}) {
    if (ToString(m) == name) return m;
  }
  Fail(ErrorCode::kValidation, "unknown los_mode '" + std::string(name) + "'");
}

void ValidateChannelConfig(const ChannelConfig& cfg) {
  if (!(cfg.fc_hz > 0.0)) Fail(ErrorCode::kValidation, "fc_hz must be > 0");
  if (!(cfg.d0_m > 0.0)) Fail(ErrorCode::kValidation, "d0_m must be > 0");
  if (!(cfg.exponent > 0.0)) Fail(ErrorCode::kValidation, "exponent must be > 0");
  if (!(cfg.shadowing_sigma_db >= 0.0)) {
    Fail(ErrorCode::kValidation, "shadowing_sigma_db must be >= 0");
  }
  if (cfg.ref_loss_db && !std::isfinite(*cfg.ref_loss_db)) {
    Fail(ErrorCode::kValidation, "ref_loss_db must be finite");
  }
}

ChannelConfig ParseChannelConfigJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("channel config: ") + e.what());
  }
  if (!j.is_object()) Fail(ErrorCode::kParse, "channel config must be a JSON object");
  ChannelConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "model") cfg.model = ParseChannelModel(value.get<std::string>());
      else if (key == "fc_hz") cfg.fc_hz = value.get<double>();
      else if (key == "exponent") cfg.exponent = value.get<double>();
      else if (key == "d0_m") cfg.d0_m = value.get<double>();
      else if (key == "ref_loss_db") {
        if (value.is_null()) cfg.ref_loss_db.reset();
        else cfg.ref_loss_db = value.get<double>();
      } else if (key == "environment") cfg.environment = ParseEnvironment(value.get<std::string>());
      else if (key == "city_correction_db") cfg.city_correction_db = value.get<double>();
      else if (key == "los_mode") cfg.los_mode = ParseLosMode(value.get<std::string>());
      else if (key == "los_seed") cfg.los_seed = value.get<std::uint64_t>();
      else if (key == "shadowing_sigma_db") cfg.shadowing_sigma_db = value.get<double>();
      else if (key == "shadowing_seed") cfg.shadowing_seed = value.get<std::uint64_t>();
      else Fail(ErrorCode::kParse, "channel config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("channel config: ") + e.what());
  }
  ValidateChannelConfig(cfg);
  return cfg;
}

std::string ChannelConfigToJson(const ChannelConfig& cfg) {
  json j = {{"model", ToString(cfg.model)},
            {"fc_hz", cfg.fc_hz},
            {"exponent", cfg.exponent},
            {"d0_m", cfg.d0_m},
            {"environment", ToString(cfg.environment)},
            {"city_correction_db", cfg.city_correction_db},
            {"los_mode", ToString(cfg.los_mode)},
            {"los_seed", cfg.los_seed},
            {"shadowing_sigma_db", cfg.shadowing_sigma_db},
            {"shadowing_seed", cfg.shadowing_seed}};
  j["ref_loss_db"] = cfg.ref_loss_db ? json(*cfg.ref_loss_db) : json(nullptr);
  return j.dump();
}

double FreeSpacePathLoss(double d_m, double fc_hz) {
  RequirePositive(d_m, "distance");
  RequirePositive(fc_hz, "frequency");
  return 20.0 * std::log10(4.0 * std::numbers::pi * d_m * fc_hz / kSpeedOfLight);
}

double LogDistancePathLoss(double d_m, double fc_hz, double exponent, double d0_m,
                           std::optional<double> ref_loss_db) {
  RequirePositive(d_m, "distance");
  RequirePositive(d0_m, "reference distance");
  double ref = ref_loss_db ? *ref_loss_db : FreeSpacePathLoss(d0_m, fc_hz);
  if (d_m <= d0_m) return ref;
  return ref + 10.0 * exponent * std::log10(d_m / d0_m);
}

double HataMobileCorrection(double f_mhz, double hm_m, Environment env) {
  if (env == Environment::kUrbanLarge) {
    if (f_mhz >= 300.0) {
      double t = std::log10(11.75 * hm_m);
      return 3.2 * t * t - 4.97;
    }
    double t = std::log10(1.54 * hm_m);
    return 8.29 * t * t - 1.1;
  }
  double lf = std::log10(f_mhz);
  return (1.1 * lf - 0.7) * hm_m - (1.56 * lf - 0.8);
}

namespace {

// Terms shared by Hata and COST-231: everything except the frequency
// intercept and the environment adjustment.
double HataCommon(double d2d_m, double hb_m, double hm_m, double f_mhz, Environment env) {
  double d_km = std::max(d2d_m, kMinModelDistanceM) / 1000.0;
  double log_hb = std::log10(hb_m);
  return -13.82 * log_hb - HataMobileCorrection(f_mhz, hm_m, env) +
         (44.9 - 6.55 * log_hb) * std::log10(d_km);
}

}  // namespace

double OkumuraHataPathLoss(double d2d_m, double fc_hz, double hb_m, double hm_m,
                           Environment env) {
  RequirePositive(d2d_m, "distance");
  RequirePositive(fc_hz, "frequency");
  RequirePositive(hb_m, "base station height");
  RequirePositive(hm_m, "mobile height");
  double f_mhz = fc_hz / 1e6;
  double loss = 69.55 + 26.16 * std::log10(f_mhz) + HataCommon(d2d_m, hb_m, hm_m, f_mhz, env);
  if (env == Environment::kSuburban) {
    double t = std::log10(f_mhz / 28.0);
    loss -= 2.0 * t * t + 5.4;
  }
  return loss;
}

double Cost231PathLoss(double d2d_m, double fc_hz, double hb_m, double hm_m, Environment env,
                       double city_correction_db) {
  RequirePositive(d2d_m, "distance");
  RequirePositive(fc_hz, "frequency");
  RequirePositive(hb_m, "base station height");
  RequirePositive(hm_m, "mobile height");
  double f_mhz = fc_hz / 1e6;
  return 46.3 + 33.9 * std::log10(f_mhz) + HataCommon(d2d_m, hb_m, hm_m, f_mhz, env) +
         city_correction_db;
}

double UmaLosProbability(double d2d_m, double h_ut_m) {
  if (d2d_m <= 18.0) return 1.0;
  double c = 0.0;
  if (h_ut_m > 13.0) c = std::pow((h_ut_m - 13.0) / 10.0, 1.5);
  double base = 18.0 / d2d_m + std::exp(-d2d_m / 63.0) * (1.0 - 18.0 / d2d_m);
  return base * (1.0 + c * 1.25 * std::pow(d2d_m / 100.0, 3) * std::exp(-d2d_m / 150.0));
}

double UmaBreakpointDistance(double h_bs_m, double h_ut_m, double fc_hz) {
  constexpr double kEffectiveEnvHeight = 1.0;
  return 4.0 * (h_bs_m - kEffectiveEnvHeight) * (h_ut_m - kEffectiveEnvHeight) * fc_hz /
         kSpeedOfLight;
}

namespace {

double UmaDistance3d(double d2d_m, double h_bs_m, double h_ut_m) {
  return std::max(std::hypot(d2d_m, h_bs_m - h_ut_m), kMinModelDistanceM);
}

void CheckUmaInputs(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m) {
  if (!(d2d_m >= 0.0) || !std::isfinite(d2d_m)) {
    Fail(ErrorCode::kDomain, "distance must be >= 0 and finite");
  }
  RequirePositive(fc_hz, "frequency");
  RequirePositive(h_bs_m, "base station height");
  RequirePositive(h_ut_m, "user terminal height");
}

}  // namespace

double UmaLosPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m) {
  CheckUmaInputs(d2d_m, fc_hz, h_bs_m, h_ut_m);
  double d3d = UmaDistance3d(d2d_m, h_bs_m, h_ut_m);
  double fc_ghz = fc_hz / 1e9;
  double d_bp = UmaBreakpointDistance(h_bs_m, h_ut_m, fc_hz);
  if (d2d_m <= d_bp) {
    return 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
  }
  double dh = h_bs_m - h_ut_m;
  return 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) -
         9.0 * std::log10(d_bp * d_bp + dh * dh);
}

double UmaNlosPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m) {
  double los = UmaLosPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m);
  double d3d = UmaDistance3d(d2d_m, h_bs_m, h_ut_m);
  double nlos = 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc_hz / 1e9) -
                0.6 * (h_ut_m - 1.5);
  return std::max(los, nlos);
}

double Uma3gppPathLoss(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m, LosMode mode,
                       std::uint64_t seed, std::uint64_t link_key) {
  switch (mode) {
    case LosMode::kAlwaysLos: return UmaLosPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m);
    case LosMode::kAlwaysNlos: return UmaNlosPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m);
    case LosMode::kProbabilistic: {
      double u = rng::Uniform(seed, kLosStream, link_key);
      return u < UmaLosProbability(d2d_m, h_ut_m) ? UmaLosPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m)
                                                  : UmaNlosPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m);
    }
  }
  Fail(ErrorCode::kValidation, "invalid LOS mode");
}

double ReceivedPower(double tx_power_dbm, double pl_db, double shadowing_draw_db) {
  return tx_power_dbm - pl_db + shadowing_draw_db;
}

std::vector<std::string> ValidityWarnings(const ChannelConfig& cfg, const Position& ed,
                                          const Position& gw) {
  std::vector<std::string> out;
  double f_mhz = cfg.fc_hz / 1e6;
  double d2d = Distance2d(ed, gw);
  std::string name(ToString(cfg.model));
  switch (cfg.model) {
    case ChannelModel::kLogDistance:
      break;
    case ChannelModel::kOkumuraHata:
    case ChannelModel::kCost231: {
      bool hata = cfg.model == ChannelModel::kOkumuraHata;
      double f_lo = hata ? 150.0 : 1500.0;
      double f_hi = hata ? 1500.0 : 2000.0;
      if (f_mhz < f_lo || f_mhz > f_hi) {
        out.push_back(name + ": frequency outside " + io::FormatDouble(f_lo) + "-" +
                      io::FormatDouble(f_hi) + " MHz");
      }
      if (d2d < 1000.0 || d2d > 20000.0) out.push_back(name + ": distance outside 1-20 km");
      if (gw.z_m < 30.0 || gw.z_m > 200.0) out.push_back(name + ": hb outside 30-200 m");
      if (ed.z_m < 1.0 || ed.z_m > 10.0) out.push_back(name + ": hm outside 1-10 m");
      break;
    }
    case ChannelModel::kUma3gpp:
      if (ed.z_m < 1.5 || ed.z_m > 22.5) out.push_back(name + ": h_ut outside 1.5-22.5 m");
      if (d2d < 10.0 || d2d > 5000.0) out.push_back(name + ": 2D distance outside 10-5000 m");
      break;
  }
  return out;
}

double LinkPathLoss(const ChannelConfig& cfg, const Position& ed, const Position& gw,
                    std::size_t ed_index, std::size_t gw_index) {
  switch (cfg.model) {
    case ChannelModel::kLogDistance: {
      // Coincident points fall inside d0 and take the reference loss.
      double d = std::max(Distance3d(ed, gw), std::numeric_limits<double>::min());
      return LogDistancePathLoss(d, cfg.fc_hz, cfg.exponent, cfg.d0_m, cfg.ref_loss_db);
    }
    case ChannelModel::kOkumuraHata:
      return OkumuraHataPathLoss(std::max(Distance2d(ed, gw), kMinModelDistanceM), cfg.fc_hz,
                                 gw.z_m, ed.z_m, cfg.environment);
    case ChannelModel::kCost231:
      return Cost231PathLoss(std::max(Distance2d(ed, gw), kMinModelDistanceM), cfg.fc_hz, gw.z_m,
                             ed.z_m, cfg.environment, cfg.city_correction_db);
    case ChannelModel::kUma3gpp:
      return Uma3gppPathLoss(Distance2d(ed, gw), cfg.fc_hz, gw.z_m, ed.z_m, cfg.los_mode,
                             cfg.los_seed, LinkKey(ed_index, gw_index));
  }
  Fail(ErrorCode::kValidation, "invalid channel model");
}

double ShadowingDraw(const ChannelConfig& cfg, std::size_t ed_index, std::size_t gw_index) {
  if (cfg.shadowing_sigma_db == 0.0) return 0.0;
  return cfg.shadowing_sigma_db *
         rng::StandardNormal(cfg.shadowing_seed, kShadowingStream, LinkKey(ed_index, gw_index));
}

}  // namespace lwplan
