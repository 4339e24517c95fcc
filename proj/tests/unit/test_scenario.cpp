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

#include <filesystem>
#include <random>
#include <string>

#include "lwplan/error.hpp"
#include "lwplan/scenario.hpp"
#include "lwplan/text_io.hpp"

using namespace lwplan;

namespace {

std::string ErrorText(const std::string& json) {
  try {
    ParseScenarioJson(json);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("ten by ten grid layout") {
    auto s = BuildGrid({0, 0, 0}, 10, 10, 50.0, 30.0, {{1, 1, 1.4}});
    REQUIRE(s.num_candidates() == 100);
    CHECK(s.gw_candidates.front() == Position{0, 0, 30});
    CHECK(s.gw_candidates.back() == Position{450, 450, 30});
    CHECK(s.gw_candidates[1] == Position{50, 0, 30});
    CHECK(s.gw_candidates[10] == Position{0, 50, 30});
  }

  TEST_CASE("degenerate and small grids") {
    auto one = BuildGrid({5, 7, 0}, 1, 1, 10.0, 12.0, {{0, 0, 1}});
    REQUIRE(one.num_candidates() == 1);
    CHECK(one.gw_candidates[0] == Position{5, 7, 12});

    auto s = BuildGrid({0, 0, 0}, 2, 3, 10.0, 30.0, {{1, 1, 1}});
    REQUIRE(s.num_candidates() == 6);
    double max_x = 0, max_y = 0;
    for (const auto& c : s.gw_candidates) {
      max_x = std::max(max_x, c.x_m);
      max_y = std::max(max_y, c.y_m);
    }
    CHECK(max_x == 10.0);
    CHECK(max_y == 20.0);
  }

  TEST_CASE("grid indices are a bijection onto coordinates") {
    auto s = BuildGrid({-20, 3, 0}, 7, 4, 12.5, 30.0, {{0, 0, 1}});
    REQUIRE(s.num_candidates() == 28);
    for (std::size_t iy = 0; iy < 4; ++iy) {
      for (std::size_t ix = 0; ix < 7; ++ix) {
        const auto& c = s.gw_candidates[iy * 7 + ix];
        CHECK(c.x_m == -20 + 12.5 * ix);
        CHECK(c.y_m == 3 + 12.5 * iy);
      }
    }
  }

  TEST_CASE("grid rejects bad spacing and height") {
    CHECK_THROWS_AS(BuildGrid({0, 0, 0}, 2, 2, 0.0, 30.0, {}), Error);
    CHECK_THROWS_AS(BuildGrid({0, 0, 0}, 2, 2, -5.0, 30.0, {}), Error);
    CHECK_THROWS_AS(BuildGrid({0, 0, 0}, 2, 2, 5.0, 0.0, {}), Error);
    CHECK_THROWS_AS(BuildGrid({0, 0, 0}, 0, 2, 5.0, 30.0, {}), Error);
  }

  TEST_CASE("shipped fixture file") {
    auto s = LoadScenario(std::filesystem::path(LWPLAN_SOURCE_DIR) / "data/replication_scenario.json");
    CHECK(s.num_candidates() == 100);
    CHECK(s.num_eds() == 54);
    for (const auto& ed : s.eds) {
      CHECK(ed.z_m == 1.4);
      CHECK(ed.x_m >= 0.0);
      CHECK(ed.x_m <= 450.0);
      CHECK(ed.y_m >= 0.0);
      CHECK(ed.y_m <= 450.0);
    }
    CHECK(s == ReplicationFixture());
  }

  TEST_CASE("fixture generator is seed-stable and seed-sensitive") {
    CHECK(ReplicationFixture(7) == ReplicationFixture(7));
    CHECK_FALSE(ReplicationFixture(7) == ReplicationFixture(8));
    auto s = ReplicationFixture();
    for (std::size_t i = 0; i < s.eds.size(); ++i) {
      for (std::size_t j = i + 1; j < s.eds.size(); ++j) CHECK_FALSE(s.eds[i] == s.eds[j]);
      for (const auto& c : s.gw_candidates) CHECK(Distance2d(s.eds[i], c) > 0.0);
    }
  }

  TEST_CASE("schema violations") {
    CHECK(ErrorText(R"({"gw_candidates": [[0,0,30]], "eds": []})") == "eds must be non-empty");
    CHECK(ErrorText(R"({"gw_candidates": [], "eds": [[1,1,1]]})") ==
          "gw_candidates must be non-empty");
    auto dup = ErrorText(R"({"gw_candidates": [[0,0,30],[0,0,20]], "eds": [[1,1,1]]})");
    CHECK(dup.find("gw_candidates[1]") != std::string::npos);
    CHECK(dup.find("duplicate") != std::string::npos);
    CHECK(ErrorText(R"({"eds": [[1,1,1]]})").find("gw_candidates") != std::string::npos);
    CHECK(ErrorText(R"({"gw_candidates": [[0,0]], "eds": [[1,1,1]]})")
              .find("gw_candidates[0]") != std::string::npos);
    CHECK(ErrorText(R"({"gw_candidates": [[0,0,30]], "eds": [[1,1,0]]})").find("eds[0]") !=
          std::string::npos);
    CHECK_FALSE(ErrorText("{not json").empty());
  }

  TEST_CASE("missing file is an io error") {
    try {
      LoadScenario("/nonexistent/scenario.json");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIo);
    }
  }

  TEST_CASE("distance examples") {
    Position a{0, 0, 30}, b{0, 0, 1.4};
    CHECK(Distance3d(a, b) == doctest::Approx(28.6).epsilon(1e-12));
    CHECK(Distance2d(a, b) == 0.0);
    CHECK(Distance3d(a, a) == 0.0);
    CHECK(Distance3d({0, 0, 0}, {3, 4, 0}) == 5.0);
  }

  TEST_CASE("distance metric properties on random triples") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    for (int i = 0; i < 2000; ++i) {
      Position a{u(gen), u(gen), u(gen)}, b{u(gen), u(gen), u(gen)}, c{u(gen), u(gen), u(gen)};
      CHECK(Distance3d(a, b) == Distance3d(b, a));
      CHECK(Distance3d(a, b) > 0.0);
      CHECK(Distance3d(a, c) <= Distance3d(a, b) + Distance3d(b, c) + 1e-9);
      CHECK(Distance2d(a, b) <= Distance3d(a, b));
    }
  }

  TEST_CASE("save then load is bit exact") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    Scenario s = BuildGrid({0.1, 0.2, 0}, 3, 3, 33.3, 29.7, {});
    for (int i = 0; i < 20; ++i) s.eds.push_back({u(gen), u(gen), 1.0 + u(gen) / 1000.0});
    auto path = std::filesystem::temp_directory_path() / "lwplan_scenario_roundtrip.json";
    SaveScenario(s, path);
    auto back = LoadScenario(path);
    CHECK(back == s);
    std::filesystem::remove(path);

    Scenario bare;
    bare.gw_candidates = {{1.0 / 3.0, 2.0 / 7.0, 30}};
    bare.eds = {{1e-9, 123456.789, 1.4}};
    CHECK(ParseScenarioJson(ScenarioToJson(bare)) == bare);
  }
}
