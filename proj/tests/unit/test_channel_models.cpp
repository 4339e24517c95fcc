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

#include <doctest.h>

#include <cmath>
#include <random>

#include "lwplan/channel_models.hpp"
#include "lwplan/error.hpp"
#include "lwplan/scenario.hpp"

using namespace lwplan;

namespace {

constexpr double kGHz = 1e9;
// 3D distance of 100 m between a 30 m mast and a 1.4 m device.
const double kD2dFor100m = std::sqrt(100.0 * 100.0 - 28.6 * 28.6);

}  // namespace

TEST_SUITE("channel_models") {
  TEST_CASE("free space oracle values") {
    CHECK(FreeSpacePathLoss(1.0, kGHz) == doctest::Approx(32.44778).epsilon(1e-6));
    CHECK(FreeSpacePathLoss(32.0, kGHz) == doctest::Approx(62.55078).epsilon(1e-6));
    CHECK(FreeSpacePathLoss(200.0, kGHz) - FreeSpacePathLoss(100.0, kGHz) ==
          doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(FreeSpacePathLoss(0.0, kGHz), Error);
    CHECK_THROWS_AS(FreeSpacePathLoss(-1.0, kGHz), Error);
  }

  TEST_CASE("log distance oracle values") {
    CHECK(LogDistancePathLoss(500.0, kGHz, 3.76, 32.0) == doctest::Approx(107.43841).epsilon(1e-6));
    for (double n : {2.0, 3.0, 3.76, 5.5}) {
      CHECK(LogDistancePathLoss(32.0, kGHz, n, 32.0, 71.25) == 71.25);
      CHECK(LogDistancePathLoss(32.0, kGHz, n, 32.0) == FreeSpacePathLoss(32.0, kGHz));
    }
    double ref = FreeSpacePathLoss(32.0, kGHz);
    CHECK(LogDistancePathLoss(320.0, kGHz, 3.76, 32.0) == doctest::Approx(ref + 37.6).epsilon(1e-12));
    CHECK(LogDistancePathLoss(5.0, kGHz, 3.76, 32.0) == ref);
    CHECK_THROWS_AS(LogDistancePathLoss(0.0, kGHz, 3.76, 32.0), Error);
  }

  TEST_CASE("okumura hata oracle values") {
    CHECK(HataMobileCorrection(1000.0, 1.4, Environment::kUrbanSmallMedium) ==
          doctest::Approx(-0.24).epsilon(1e-9));
    CHECK(OkumuraHataPathLoss(1000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium) ==
          doctest::Approx(127.85618).epsilon(1e-6));
    double decade = OkumuraHataPathLoss(10000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium) -
                    OkumuraHataPathLoss(1000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium);
    CHECK(decade == doctest::Approx(44.9 - 6.55 * std::log10(30.0)).epsilon(1e-12));
    CHECK(decade == doctest::Approx(35.2249).epsilon(1e-5));
    CHECK_THROWS_AS(OkumuraHataPathLoss(0.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium), Error);
  }

  TEST_CASE("hata mobile correction is additive") {
    // Root of (1.1 lg f - 0.7) hm - (1.56 lg f - 0.8) at 1000 MHz.
    double hm0 = (1.56 * 3.0 - 0.8) / (1.1 * 3.0 - 0.7);
    CHECK(HataMobileCorrection(1000.0, hm0, Environment::kUrbanSmallMedium) ==
          doctest::Approx(0.0).epsilon(1e-12));
    double without = 69.55 + 26.16 * 3.0 - 13.82 * std::log10(30.0) +
                     (44.9 - 6.55 * std::log10(30.0)) * std::log10(2.0);
    CHECK(OkumuraHataPathLoss(2000.0, kGHz, 30.0, hm0, Environment::kUrbanSmallMedium) ==
          doctest::Approx(without).epsilon(1e-12));
    // Large city above 300 MHz: 3.2 (lg 11.75 hm)^2 - 4.97.
    double t = std::log10(11.75 * 1.4);
    CHECK(HataMobileCorrection(1000.0, 1.4, Environment::kUrbanLarge) ==
          doctest::Approx(3.2 * t * t - 4.97).epsilon(1e-12));
  }

  TEST_CASE("cost231 oracle values") {
    double c0 = Cost231PathLoss(1000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium, 0.0);
    double c3 = Cost231PathLoss(1000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium, 3.0);
    CHECK(c0 == doctest::Approx(127.82618).epsilon(1e-6));
    CHECK(c3 - c0 == doctest::Approx(3.0).epsilon(1e-12));
    double hata = OkumuraHataPathLoss(1000.0, kGHz, 30.0, 1.4, Environment::kUrbanSmallMedium);
    CHECK(c0 - hata == doctest::Approx((46.3 - 69.55) + (33.9 - 26.16) * 3.0).epsilon(1e-9));
    CHECK(c0 - hata == doctest::Approx(-0.03).epsilon(1e-9));
  }

  TEST_CASE("uma oracle values") {
    CHECK(UmaBreakpointDistance(30.0, 1.4, kGHz) == doctest::Approx(154.77374).epsilon(1e-7));
    CHECK(UmaLosPathLoss(kD2dFor100m, kGHz, 30.0, 1.4) == doctest::Approx(72.0).epsilon(1e-12));
    CHECK(UmaNlosPathLoss(kD2dFor100m, kGHz, 30.0, 1.4) == doctest::Approx(91.76).epsilon(1e-12));
    CHECK(Uma3gppPathLoss(kD2dFor100m, kGHz, 30.0, 1.4, LosMode::kAlwaysLos) ==
          UmaLosPathLoss(kD2dFor100m, kGHz, 30.0, 1.4));
    CHECK_THROWS_AS(UmaLosPathLoss(-1.0, kGHz, 30.0, 1.4), Error);
    CHECK_NOTHROW(UmaLosPathLoss(0.0, kGHz, 30.0, 1.4));
  }

  TEST_CASE("uma nlos dominates los pointwise") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(0.0, 6000.0), f(0.5e9, 6e9), hbs(10.0, 60.0),
        hut(1.0, 22.5);
    for (int i = 0; i < 5000; ++i) {
      double dd = d(gen), ff = f(gen), hb = hbs(gen), hu = hut(gen);
      CHECK(UmaNlosPathLoss(dd, ff, hb, hu) >= UmaLosPathLoss(dd, ff, hb, hu));
    }
  }

  TEST_CASE("uma probabilistic draw is fixed per link") {
    int los = 0;
    for (std::uint64_t key = 0; key < 400; ++key) {
      double a = Uma3gppPathLoss(300.0, kGHz, 30.0, 1.4, LosMode::kProbabilistic, 9, key);
      double b = Uma3gppPathLoss(300.0, kGHz, 30.0, 1.4, LosMode::kProbabilistic, 9, key);
      CHECK(a == b);
      if (a == UmaLosPathLoss(300.0, kGHz, 30.0, 1.4)) ++los;
      else CHECK(a == UmaNlosPathLoss(300.0, kGHz, 30.0, 1.4));
    }
    double expected = 400.0 * UmaLosProbability(300.0, 1.4);
    CHECK(std::abs(los - expected) < 5.0 * std::sqrt(expected));
    CHECK(UmaLosProbability(10.0, 1.4) == 1.0);
  }

  TEST_CASE("received power arithmetic") {
    CHECK(ReceivedPower(0.0, 107.44) == -107.44);
    CHECK(ReceivedPower(14.0, 107.44) == doctest::Approx(-93.44).epsilon(1e-12));
    CHECK(ReceivedPower(7.0, 0.0) == 7.0);
    CHECK(ReceivedPower(0.0, 100.0, 2.5) == -97.5);
  }

  TEST_CASE("models are non-decreasing in distance") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(1.0, 20000.0);
    for (int i = 0; i < 3000; ++i) {
      double a = u(gen), b = u(gen);
      if (a > b) std::swap(a, b);
      CHECK(FreeSpacePathLoss(a, kGHz) <= FreeSpacePathLoss(b, kGHz));
      CHECK(LogDistancePathLoss(a, kGHz, 3.76, 32.0) <= LogDistancePathLoss(b, kGHz, 3.76, 32.0));
      for (auto env : {Environment::kUrbanSmallMedium, Environment::kUrbanLarge, Environment::kSuburban}) {
        CHECK(OkumuraHataPathLoss(a, kGHz, 30.0, 1.4, env) <= OkumuraHataPathLoss(b, kGHz, 30.0, 1.4, env));
        CHECK(Cost231PathLoss(a, kGHz, 30.0, 1.4, env, 3.0) <= Cost231PathLoss(b, kGHz, 30.0, 1.4, env, 3.0));
      }
      CHECK(UmaLosPathLoss(a, kGHz, 30.0, 1.4) <= UmaLosPathLoss(b, kGHz, 30.0, 1.4) + 1e-12);
      CHECK(UmaNlosPathLoss(a, kGHz, 30.0, 1.4) <= UmaNlosPathLoss(b, kGHz, 30.0, 1.4) + 1e-12);
    }
  }

  TEST_CASE("deterministic without shadowing") {
    ChannelConfig cfg;
    Position ed{12.5, 40.0, 1.4}, gw{100.0, 150.0, 30.0};
    for (auto m : {ChannelModel::kLogDistance, ChannelModel::kOkumuraHata, ChannelModel::kCost231,
                   ChannelModel::kUma3gpp}) {
      cfg.model = m;
      CHECK(LinkPathLoss(cfg, ed, gw, 3, 4) == LinkPathLoss(cfg, ed, gw, 3, 4));
      CHECK(ShadowingDraw(cfg, 3, 4) == 0.0);
    }
  }

  TEST_CASE("shadowing draws are keyed and zero mean") {
    ChannelConfig cfg;
    cfg.shadowing_sigma_db = 8.0;
    cfg.shadowing_seed = 77;
    CHECK(ShadowingDraw(cfg, 5, 6) == ShadowingDraw(cfg, 5, 6));
    CHECK(ShadowingDraw(cfg, 5, 6) != ShadowingDraw(cfg, 6, 5));
    double sum = 0.0, sq = 0.0;
    constexpr std::size_t kN = 100000;
    for (std::size_t i = 0; i < kN; ++i) {
      double x = ShadowingDraw(cfg, i / 1000, i % 1000);
      sum += x;
      sq += x * x;
    }
    double mean = sum / kN;
    CHECK(std::abs(mean) < 0.05 * cfg.shadowing_sigma_db);
    CHECK(std::sqrt(sq / kN - mean * mean) == doctest::Approx(8.0).epsilon(0.02));
  }

  TEST_CASE("config json round trip and rejection") {
    auto cfg = ParseChannelConfigJson(
        R"({"model": "cost231", "fc_hz": 1.8e9, "environment": "urban_large", "city_correction_db": 3})");
    CHECK(cfg.model == ChannelModel::kCost231);
    CHECK(cfg.fc_hz == 1.8e9);
    CHECK(cfg.environment == Environment::kUrbanLarge);
    CHECK(cfg.city_correction_db == 3.0);
    auto back = ParseChannelConfigJson(ChannelConfigToJson(cfg));
    CHECK(back.model == cfg.model);
    CHECK(back.fc_hz == cfg.fc_hz);
    CHECK(back.environment == cfg.environment);
    CHECK_THROWS_AS(ParseChannelConfigJson(R"({"model": "two_ray"})"), Error);
    CHECK_THROWS_AS(ParseChannelConfigJson(R"({"modle": "cost231"})"), Error);
    CHECK_THROWS_AS(ParseChannelConfigJson(R"({"model": "log_distance", "exponent": -1})"), Error);
  }

  TEST_CASE("validity warnings flag short links at 1 GHz") {
    ChannelConfig cfg;
    cfg.model = ChannelModel::kCost231;
    auto w = ValidityWarnings(cfg, {0, 0, 1.4}, {100, 0, 30});
    CHECK(w.size() == 2);
    cfg.model = ChannelModel::kLogDistance;
    CHECK(ValidityWarnings(cfg, {0, 0, 1.4}, {100, 0, 30}).empty());
  }
}
