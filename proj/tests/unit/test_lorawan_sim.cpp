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
#include <vector>

#include "lwplan/coverage.hpp"
#include "lwplan/error.hpp"
#include "lwplan/lorawan_sim.hpp"
#include "lwplan/placement.hpp"
#include "lwplan/scenario.hpp"

using namespace lwplan;

namespace {

Scenario LineScenario(std::size_t eds) {
  Scenario s;
  s.gw_candidates = {{0, 0, 30}, {500, 0, 30}};
  for (std::size_t d = 0; d < eds; ++d) s.eds.push_back({10.0 + d, 5.0, 1.4});
  return s;
}

PlacementSolution Select(std::vector<std::size_t> selected) {
  PlacementSolution s;
  s.objective = selected.size();
  s.selected = std::move(selected);
  s.status = SolveStatus::kOptimal;
  return s;
}

GainMatrix Uniform(std::size_t eds, std::size_t candidates, double value) {
  return GainMatrix(eds, candidates, value);
}

// Fixture at 1000 packets, SF7, 600 s with the exact plan at -90 dBm.
struct FixtureRun {
  Scenario scenario = ReplicationFixture();
  GainMatrix alpha;
  PlacementSolution plan;
  FixtureRun() {
    ChannelConfig cfg;
    cfg.model = ChannelModel::kOkumuraHata;
    alpha = BuildAlpha(scenario, cfg, 0.0);
    plan = SolveExact(Threshold(alpha, -90.0));
  }
};

double MeanPdr(const FixtureRun& run, TrafficConfig cfg, std::uint64_t seeds) {
  double sum = 0.0;
  for (std::uint64_t s = 1; s <= seeds; ++s) {
    cfg.seed = s;
    sum += RunSimulation(run.scenario, run.plan, run.alpha, cfg).pdr_overall;
  }
  return sum / static_cast<double>(seeds);
}

}  // namespace

TEST_SUITE("lorawan_sim") {
  TEST_CASE("time on air") {
    TrafficConfig cfg;
    CHECK(SymbolTime(7, 125000.0) == doctest::Approx(1.024e-3).epsilon(1e-12));
    CHECK(std::abs(TimeOnAir(cfg) - 61.696e-3) < 1e-6);
    cfg.sf = 12;
    cfg.payload_bytes = 0;
    // Payload symbols reduce to the fixed 8 once the ceil term clamps at zero.
    CHECK(TimeOnAir(cfg) == doctest::Approx((8 + 4.25 + 8) * SymbolTime(12, 125000.0)).epsilon(1e-12));
  }

  TEST_CASE("symbol time doubles per spreading factor step") {
    for (int sf = 7; sf < 12; ++sf) {
      for (double bw : {125000.0, 250000.0, 500000.0}) {
        CHECK(SymbolTime(sf + 1, bw) == 2.0 * SymbolTime(sf, bw));
        TrafficConfig a, b;
        a.sf = b.sf = sf;
        a.bandwidth_hz = b.bandwidth_hz = bw;
        b.preamble_symbols = a.preamble_symbols + 6;
        double preamble = TimeOnAir(b) - TimeOnAir(a);
        a.sf = b.sf = sf + 1;
        CHECK(TimeOnAir(b) - TimeOnAir(a) == doctest::Approx(2.0 * preamble).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("invalid radio settings") {
    TrafficConfig cfg;
    cfg.sf = 6;
    CHECK_THROWS_AS(TimeOnAir(cfg), Error);
    cfg.sf = 7;
    cfg.bandwidth_hz = 200000.0;
    CHECK_THROWS_AS(TimeOnAir(cfg), Error);
    cfg.bandwidth_hz = 125000.0;
    cfg.coding_rate_denominator = 9;
    CHECK_THROWS_AS(TimeOnAir(cfg), Error);
  }

  TEST_CASE("sensitivity table") {
    CHECK(Sensitivity(7, 125000.0) == -130.0);
    CHECK(Sensitivity(12, 125000.0) == -142.5);
    CHECK_THROWS_AS(Sensitivity(7, 250000.0), Error);
    auto t = SensitivityTable::Defaults();
    t.Set(9, 125000.0, -150.0);
    CHECK(t.Lookup(9, 125000.0) == -150.0);
    for (int sf : {7, 8, 10, 11, 12}) CHECK(t.Lookup(sf, 125000.0) == Sensitivity(sf, 125000.0));
  }

  TEST_CASE("single device in range delivers everything") {
    auto s = LineScenario(1);
    auto r = RunSimulation(s, Select({1}), Uniform(1, 2, -100.0), TrafficConfig{});
    CHECK(r.pdr_overall == 1.0);
    CHECK(r.per_ed[0].sent == 1000);
    CHECK(r.per_ed[0].delivered == 1000);
    CHECK(r.collisions == 0);
  }

  TEST_CASE("device below sensitivity delivers nothing") {
    auto s = LineScenario(1);
    auto r = RunSimulation(s, Select({1, 2}), Uniform(1, 2, -131.0), TrafficConfig{});
    CHECK(r.pdr_overall == 0.0);
    CHECK(r.below_sensitivity_drops == 1000);
    CHECK(r.per_ed[0].below_sensitivity == 1000);
  }

  TEST_CASE("equal power full overlap loses both") {
    auto s = LineScenario(2);
    TrafficConfig cfg;
    cfg.packets_per_ed = 10;
    cfg.fixed_offsets_s = {0.25, 0.25};
    auto r = RunSimulation(s, Select({1}), Uniform(2, 2, -100.0), cfg);
    CHECK(r.pdr_overall == 0.0);
    CHECK(r.collisions == 20);
  }

  TEST_CASE("capture margin decides the stronger packet") {
    auto s = LineScenario(2);
    TrafficConfig cfg;
    cfg.packets_per_ed = 10;
    cfg.fixed_offsets_s = {0.25, 0.26};
    auto alpha = Uniform(2, 2, -100.0);
    alpha.at(0, 0) = -94.0;
    auto r = RunSimulation(s, Select({1}), alpha, cfg);
    CHECK(r.per_ed[0].delivered == 10);
    CHECK(r.per_ed[1].collided == 10);
    alpha.at(0, 0) = -94.01;
    r = RunSimulation(s, Select({1}), alpha, cfg);
    CHECK(r.pdr_overall == 0.0);
  }

  TEST_CASE("a second gateway rescues a collision") {
    auto s = LineScenario(2);
    TrafficConfig cfg;
    cfg.packets_per_ed = 5;
    cfg.fixed_offsets_s = {0.1, 0.1};
    auto alpha = Uniform(2, 2, -100.0);
    alpha.at(1, 1) = -80.0;
    auto r = RunSimulation(s, Select({1, 2}), alpha, cfg);
    CHECK(r.per_ed[0].delivered == 0);
    CHECK(r.per_ed[1].delivered == 5);
  }

  TEST_CASE("demodulation paths cap concurrent receptions") {
    Scenario s = LineScenario(3);
    TrafficConfig cfg;
    cfg.packets_per_ed = 4;
    cfg.gw_demod_paths = 2;
    cfg.n_channels = 1;
    cfg.capture_threshold_db = -1000.0;
    cfg.fixed_offsets_s = {0.0, 0.001, 0.002};
    auto r = RunSimulation(s, Select({1}), Uniform(3, 2, -100.0), cfg);
    CHECK(r.per_ed[2].demod_blocked == 4);
    CHECK(r.demod_blocked_drops == 4);
    CHECK(r.per_ed[0].delivered == 4);
    CHECK(r.per_ed[1].delivered == 4);
  }

  TEST_CASE("infeasible placement is refused") {
    auto s = LineScenario(1);
    PlacementSolution bad;
    try {
      RunSimulation(s, bad, Uniform(1, 2, -100.0), TrafficConfig{});
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRefused);
    }
  }

  TEST_CASE("outcomes partition each device's packets") {
    FixtureRun run;
    TrafficConfig cfg;
    auto r = RunSimulation(run.scenario, run.plan, run.alpha, cfg);
    std::size_t delivered = 0, sent = 0;
    for (const auto& e : r.per_ed) {
      CHECK(e.sent == 1000);
      CHECK(e.delivered + e.collided + e.demod_blocked + e.below_sensitivity == e.sent);
      delivered += e.delivered;
      sent += e.sent;
    }
    CHECK(r.pdr_overall == static_cast<double>(delivered) / static_cast<double>(sent));
  }

  TEST_CASE("fixed seed gives byte identical reports") {
    FixtureRun run;
    TrafficConfig cfg;
    cfg.seed = 42;
    cfg.n_channels = 3;
    auto a = PdrReportToJson(RunSimulation(run.scenario, run.plan, run.alpha, cfg));
    auto b = PdrReportToJson(RunSimulation(run.scenario, run.plan, run.alpha, cfg));
    CHECK(a == b);
    cfg.seed = 43;
    CHECK(PdrReportToJson(RunSimulation(run.scenario, run.plan, run.alpha, cfg)) != a);
  }

  TEST_CASE("doubling the load never raises mean pdr") {
    FixtureRun run;
    TrafficConfig cfg;
    cfg.n_channels = 3;
    for (std::size_t packets : {100u, 500u, 1000u}) {
      cfg.packets_per_ed = packets;
      double base = MeanPdr(run, cfg, 20);
      cfg.packets_per_ed = 2 * packets;
      CHECK(MeanPdr(run, cfg, 20) <= base);
    }
  }

  TEST_CASE("many channels remove collisions for in range devices") {
    FixtureRun run;
    TrafficConfig cfg;
    cfg.packets_per_ed = 100;
    cfg.n_channels = 1000000;
    auto r = RunSimulation(run.scenario, run.plan, run.alpha, cfg);
    for (const auto& e : r.per_ed) CHECK(static_cast<double>(e.delivered) / e.sent >= 0.99);
  }

  TEST_CASE("links pushed under sensitivity lower pdr") {
    FixtureRun run;
    TrafficConfig cfg;
    cfg.n_channels = 3;
    auto weak = run.alpha;
    for (std::size_t d = 0; d < weak.num_eds(); ++d) {
      for (std::size_t p = 0; p < weak.num_candidates(); ++p) weak.at(d, p) -= 50.0;
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      cfg.seed = seed;
      auto strong_r = RunSimulation(run.scenario, run.plan, run.alpha, cfg);
      auto weak_r = RunSimulation(run.scenario, run.plan, weak, cfg);
      CHECK(weak_r.pdr_overall < strong_r.pdr_overall);
      CHECK(weak_r.below_sensitivity_drops > 0);
    }
  }

  TEST_CASE("duty cycle limit spaces transmissions") {
    auto s = LineScenario(1);
    TrafficConfig cfg;
    cfg.duty_cycle_limit = 0.01;
    cfg.fixed_offsets_s = {0.0};
    auto r = RunSimulation(s, Select({1}), Uniform(1, 2, -100.0), cfg);
    double spacing = TimeOnAir(cfg) / 0.01;
    auto expected = static_cast<std::size_t>(std::floor((600.0 - TimeOnAir(cfg)) / spacing)) + 1;
    CHECK(r.per_ed[0].sent <= expected);
    CHECK(r.per_ed[0].sent + 1 >= expected);
    CHECK(r.pdr_overall == 1.0);
  }

  TEST_CASE("average pdr") {
    PdrReport one, zero;
    one.pdr_overall = 1.0;
    zero.pdr_overall = 0.0;
    CHECK(AvgPdr(std::vector<PdrReport>{one}) == 1.0);
    CHECK(AvgPdr(std::vector<PdrReport>{one, zero}) == 0.5);
    CHECK(AvgPdr(std::vector<PdrReport>{zero, one}) == 0.5);
    CHECK_THROWS_AS(AvgPdr(std::vector<PdrReport>{}), Error);
  }

  TEST_CASE("report json round trip") {
    FixtureRun run;
    TrafficConfig cfg;
    cfg.packets_per_ed = 50;
    auto r = RunSimulation(run.scenario, run.plan, run.alpha, cfg);
    auto text = PdrReportToJson(r);
    CHECK(ParsePdrReportJson(text) == r);
    CHECK_THROWS_AS(ParsePdrReportJson("{}"), Error);
  }

  TEST_CASE("traffic json") {
    auto cfg = ParseTrafficConfigJson(
        R"({"packets_per_ed": 10, "sf": 9, "n_channels": 3, "sensitivity": [{"sf": 9, "bandwidth_hz": 125000, "dbm": -140}]})");
    CHECK(cfg.packets_per_ed == 10);
    CHECK(cfg.sf == 9);
    CHECK(cfg.sensitivity.Lookup(9, 125000.0) == -140.0);
    CHECK_THROWS_AS(ParseTrafficConfigJson(R"({"packets": 10})"), Error);
    CHECK_THROWS_AS(ParseTrafficConfigJson(R"({"sf": 13})"), Error);
  }
}
