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
#include <filesystem>

#include "instances.hpp"
#include "lwplan/coverage.hpp"
#include "lwplan/error.hpp"
#include "lwplan/scenario.hpp"

using namespace lwplan;

TEST_SUITE("coverage") {
  TEST_CASE("coincident ed and candidate is clamped, not singular") {
    Scenario s;
    s.gw_candidates = {{0, 0, 30}};
    s.eds = {{0, 0, 1.4}};
    ChannelConfig cfg;
    auto alpha = BuildAlpha(s, cfg, 0.0);
    CHECK(alpha.at(0, 0) == -FreeSpacePathLoss(32.0, cfg.fc_hz));
    cfg.ref_loss_db = 40.0;
    CHECK(BuildAlpha(s, cfg, 14.0).at(0, 0) == -26.0);

    s.eds = {{0, 0, 30}};
    for (auto m : {ChannelModel::kLogDistance, ChannelModel::kOkumuraHata, ChannelModel::kCost231,
                   ChannelModel::kUma3gpp}) {
      cfg.model = m;
      CHECK(std::isfinite(BuildAlpha(s, cfg, 0.0).at(0, 0)));
    }
  }

  TEST_CASE("replication fixture gives a finite 54 by 100 matrix") {
    auto s = ReplicationFixture();
    for (auto m : {ChannelModel::kLogDistance, ChannelModel::kOkumuraHata, ChannelModel::kCost231,
                   ChannelModel::kUma3gpp}) {
      ChannelConfig cfg;
      cfg.model = m;
      auto alpha = BuildAlpha(s, cfg, 0.0);
      REQUIRE(alpha.num_eds() == 54);
      REQUIRE(alpha.num_candidates() == 100);
      for (double v : alpha.values()) CHECK(std::isfinite(v));
      CHECK(alpha == BuildAlpha(s, cfg, 0.0));
    }
  }

  TEST_CASE("equidistant devices see identical power") {
    Scenario s;
    s.gw_candidates = {{100, 100, 30}};
    s.eds = {{130, 140, 1.4}, {60, 130, 1.4}, {100, 50, 1.4}};
    for (auto m : {ChannelModel::kLogDistance, ChannelModel::kOkumuraHata, ChannelModel::kCost231,
                   ChannelModel::kUma3gpp}) {
      ChannelConfig cfg;
      cfg.model = m;
      auto alpha = BuildAlpha(s, cfg, 0.0);
      CHECK(alpha.at(0, 0) == alpha.at(1, 0));
      CHECK(alpha.at(0, 0) == alpha.at(2, 0));
    }
  }

  TEST_CASE("build alpha reports model warnings once") {
    ChannelConfig cfg;
    cfg.model = ChannelModel::kCost231;
    auto alpha = BuildAlpha(ReplicationFixture(), cfg, 0.0);
    CHECK(alpha.warnings.size() == 2);
    CHECK(alpha.source == "cost231");
  }

  TEST_CASE("threshold boundary is inclusive") {
    GainMatrix alpha(1, 3);
    alpha.at(0, 0) = -90.0;
    alpha.at(0, 1) = -90.01;
    alpha.at(0, 2) = -INFINITY;
    auto beta = Threshold(alpha, -90.0);
    CHECK(beta.covers(0, 0));
    CHECK_FALSE(beta.covers(0, 1));
    CHECK_FALSE(beta.covers(0, 2));
    CHECK_FALSE(Threshold(alpha, -1e300).covers(0, 2));
    CHECK(beta.rho_dbm() == -90.0);
  }

  TEST_CASE("threshold is monotone in rho on random alpha") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto alpha = testing::RandomAlpha(seed, 25, 15);
      CoverageMatrix prev = Threshold(alpha, -140.0);
      for (int k = 1; k <= 40; ++k) {
        auto cur = Threshold(alpha, -140.0 + 2.0 * k);
        for (std::size_t d = 0; d < 25; ++d) {
          for (std::size_t p = 0; p < 15; ++p) {
            if (cur.covers(d, p)) CHECK(prev.covers(d, p));
          }
        }
        prev = cur;
      }
    }
  }

  TEST_CASE("threshold is a pure function of alpha and rho") {
    auto alpha = testing::RandomAlpha(9, 10, 10);
    CHECK(Threshold(alpha, -100.0) == Threshold(alpha, -100.0));
  }

  TEST_CASE("uncovered devices") {
    CoverageMatrix beta(4, 3, 0.0);
    for (std::size_t d = 0; d < 4; ++d) {
      for (std::size_t p = 0; p < 3; ++p) beta.set(d, p, d != 2);
    }
    CHECK(UncoveredEds(beta) == std::vector<std::size_t>{3});

    CoverageMatrix ones(3, 2, 0.0);
    for (std::size_t d = 0; d < 3; ++d) ones.set(d, 0, true), ones.set(d, 1, true);
    CHECK(UncoveredEds(ones).empty());

    CoverageMatrix eye(5, 5, 0.0);
    for (std::size_t i = 0; i < 5; ++i) eye.set(i, i, true);
    CHECK(UncoveredEds(eye).empty());
    for (std::size_t d = 0; d < 5; ++d) {
      int n = 0;
      for (std::size_t p = 0; p < 5; ++p) n += eye.covers(d, p);
      CHECK(n == 1);
    }
  }

  TEST_CASE("alpha csv round trip") {
    auto alpha = testing::RandomAlpha(4, 6, 5);
    alpha.at(2, 3) = -INFINITY;
    auto text = AlphaToCsv(alpha);
    CHECK(text.rfind("ed_index,p_1,p_2,p_3,p_4,p_5\n1,", 0) == 0);
    CHECK(text.find("-inf") != std::string::npos);
    CHECK(ParseAlphaCsv(text) == alpha);
    CHECK_THROWS_AS(ParseAlphaCsv("ed_index,p_1\n1,inf\n"), Error);
    CHECK_THROWS_AS(ParseAlphaCsv("ed_index,p_1\n2,-80\n"), Error);
    CHECK_THROWS_AS(ParseAlphaCsv("ed,p_1\n1,-80\n"), Error);
    CHECK_THROWS_AS(ParseAlphaCsv("ed_index,p_1\n1,nan\n"), Error);
  }
}
