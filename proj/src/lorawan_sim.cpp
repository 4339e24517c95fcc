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

#include "lwplan/lorawan_sim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <json.hpp>

#include "lwplan/error.hpp"
#include "lwplan/random.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

using nlohmann::json;

namespace {

constexpr std::uint64_t kOffsetStream = 0x4F464653ULL;
constexpr std::uint64_t kChannelStream = 0x4348414EULL;

bool SupportedBandwidth(double bw) { return bw == 125000.0 || bw == 250000.0 || bw == 500000.0; }

}  // namespace

SensitivityTable SensitivityTable::Defaults() {
  SensitivityTable t;
  for (int sf = 7; sf <= 12; ++sf) t.Set(sf, 125000.0, -130.0 - 2.5 * (sf - 7));
  return t;
}

double SensitivityTable::Lookup(int sf, double bandwidth_hz) const {
  auto it = entries_.find({sf, bandwidth_hz});
  if (it == entries_.end()) {
    Fail(ErrorCode::kValidation, "no sensitivity entry for SF" + std::to_string(sf) + " at " +
                                     io::FormatDouble(bandwidth_hz) + " Hz");
  }
  return it->second;
}

double Sensitivity(int sf, double bandwidth_hz) {
  static const SensitivityTable kDefaults = SensitivityTable::Defaults();
  return kDefaults.Lookup(sf, bandwidth_hz);
}

void ValidateTrafficConfig(const TrafficConfig& cfg) {
  if (cfg.sf < 7 || cfg.sf > 12) Fail(ErrorCode::kValidation, "sf must be in [7, 12]");
  if (!SupportedBandwidth(cfg.bandwidth_hz)) {
    Fail(ErrorCode::kValidation, "bandwidth_hz must be 125000, 250000 or 500000");
  }
  if (cfg.coding_rate_denominator < 5 || cfg.coding_rate_denominator > 8) {
    Fail(ErrorCode::kValidation, "coding rate must be 4/5 .. 4/8");
  }
  if (cfg.packets_per_ed < 1) Fail(ErrorCode::kValidation, "packets_per_ed must be >= 1");
  if (!(cfg.duration_s > 0.0)) Fail(ErrorCode::kValidation, "duration_s must be > 0");
  if (cfg.n_channels < 1) Fail(ErrorCode::kValidation, "n_channels must be >= 1");
  if (cfg.gw_demod_paths < 1) Fail(ErrorCode::kValidation, "gw_demod_paths must be >= 1");
  if (!std::isfinite(cfg.capture_threshold_db)) {
    Fail(ErrorCode::kValidation, "capture_threshold_db must be finite");
  }
  if (cfg.duty_cycle_limit && !(*cfg.duty_cycle_limit > 0.0 && *cfg.duty_cycle_limit <= 1.0)) {
    Fail(ErrorCode::kValidation, "duty_cycle_limit must be in (0, 1]");
  }
  for (double o : cfg.fixed_offsets_s) {
    if (!(o >= 0.0) || !std::isfinite(o)) {
      Fail(ErrorCode::kValidation, "fixed offsets must be finite and >= 0");
    }
  }
}

TrafficConfig ParseTrafficConfigJson(const std::string& text) {
  TrafficConfig cfg;
  try {
    auto j = json::parse(text);
    if (!j.is_object()) Fail(ErrorCode::kParse, "traffic config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "packets_per_ed") cfg.packets_per_ed = v.get<std::size_t>();
      else if (key == "sf") cfg.sf = v.get<int>();
      else if (key == "bandwidth_hz") cfg.bandwidth_hz = v.get<double>();
      else if (key == "coding_rate_denominator") cfg.coding_rate_denominator = v.get<int>();
      else if (key == "payload_bytes") cfg.payload_bytes = v.get<std::size_t>();
      else if (key == "preamble_symbols") cfg.preamble_symbols = v.get<std::size_t>();
      else if (key == "duration_s") cfg.duration_s = v.get<double>();
      else if (key == "n_channels") cfg.n_channels = v.get<std::size_t>();
      else if (key == "capture_threshold_db") cfg.capture_threshold_db = v.get<double>();
      else if (key == "gw_demod_paths") cfg.gw_demod_paths = v.get<std::size_t>();
      else if (key == "duty_cycle_limit") {
        if (v.is_null()) cfg.duty_cycle_limit.reset();
        else cfg.duty_cycle_limit = v.get<double>();
      } else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "fixed_offsets_s") cfg.fixed_offsets_s = v.get<std::vector<double>>();
      else if (key == "sensitivity") {
        for (const auto& e : v) {
          cfg.sensitivity.Set(e.at("sf").get<int>(), e.at("bandwidth_hz").get<double>(),
                              e.at("dbm").get<double>());
        }
      } else {
        Fail(ErrorCode::kParse, "traffic config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("traffic config: ") + e.what());
  }
  ValidateTrafficConfig(cfg);
  return cfg;
}

double SymbolTime(int sf, double bandwidth_hz) {
  return std::ldexp(1.0, sf) / bandwidth_hz;
}

double TimeOnAir(const TrafficConfig& cfg) {
  ValidateTrafficConfig(cfg);
  const double t_sym = SymbolTime(cfg.sf, cfg.bandwidth_hz);
  const int low_dr = t_sym >= 16e-3 ? 1 : 0;
  const int explicit_header = 0;  // H = 0 means the header is present
  const int crc = 1;
  const double num = 8.0 * static_cast<double>(cfg.payload_bytes) - 4.0 * cfg.sf + 28.0 +
                     16.0 * crc - 20.0 * explicit_header;
  const double den = 4.0 * (cfg.sf - 2 * low_dr);
  const double payload_symbols =
      8.0 + std::max(std::ceil(num / den) * cfg.coding_rate_denominator, 0.0);
  return (static_cast<double>(cfg.preamble_symbols) + 4.25) * t_sym + payload_symbols * t_sym;
}

std::vector<double> PdrReport::pdr_per_ed() const {
  std::vector<double> out;
  out.reserve(per_ed.size());
  for (const auto& e : per_ed) {
    out.push_back(e.sent ? static_cast<double>(e.delivered) / static_cast<double>(e.sent) : 0.0);
  }
  return out;
}

namespace {

enum class GwOutcome : std::uint8_t { kNone, kBelowSensitivity, kBlocked, kLocked };

struct Transmission {
  std::size_t ed;
  std::size_t channel;
  double start;
  double end;
};

struct Event {
  double time;
  std::uint64_t seq;
  bool is_end;
  std::size_t tx;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

}  // namespace

PdrReport RunSimulation(const Scenario& scenario, const PlacementSolution& placement,
                        const GainMatrix& alpha, const TrafficConfig& cfg) {
  ValidateTrafficConfig(cfg);
  if (!placement.feasible()) Fail(ErrorCode::kRefused, "cannot simulate an infeasible placement");
  if (alpha.num_eds() != scenario.num_eds() ||
      alpha.num_candidates() != scenario.num_candidates()) {
    Fail(ErrorCode::kValidation, "alpha dimensions do not match the scenario");
  }
  for (auto p : placement.selected) {
    if (p < 1 || p > alpha.num_candidates()) {
      Fail(ErrorCode::kValidation, "placement selects unknown candidate " + std::to_string(p));
    }
  }
  if (!cfg.fixed_offsets_s.empty() && cfg.fixed_offsets_s.size() != scenario.num_eds()) {
    Fail(ErrorCode::kValidation, "fixed_offsets_s needs one entry per device");
  }

  const std::size_t n_ed = scenario.num_eds();
  const std::size_t n_gw = placement.selected.size();
  const double toa = TimeOnAir(cfg);
  const double period = cfg.duration_s / static_cast<double>(cfg.packets_per_ed);
  const double sens = cfg.sensitivity.Lookup(cfg.sf, cfg.bandwidth_hz);

  // Received power of device d at the g-th selected gateway.
  std::vector<double> power(n_ed * n_gw);
  for (std::size_t d = 0; d < n_ed; ++d) {
    for (std::size_t g = 0; g < n_gw; ++g) {
      power[d * n_gw + g] = alpha.at(d, placement.selected[g] - 1);
    }
  }

  std::vector<Transmission> txs;
  txs.reserve(n_ed * cfg.packets_per_ed);
  PdrReport report;
  report.seed = cfg.seed;
  report.per_ed.assign(n_ed, {});
  for (std::size_t d = 0; d < n_ed; ++d) {
    double offset = cfg.fixed_offsets_s.empty()
                        ? rng::Uniform(cfg.seed, kOffsetStream, d) * period
                        : cfg.fixed_offsets_s[d];
    double next_allowed = 0.0;
    for (std::size_t k = 0; k < cfg.packets_per_ed; ++k) {
      double start = offset + static_cast<double>(k) * period;
      if (cfg.duty_cycle_limit) {
        start = std::max(start, next_allowed);
        if (start + toa > cfg.duration_s) break;
        next_allowed = start + toa / *cfg.duty_cycle_limit;
      }
      auto draw = rng::Hash(cfg.seed, kChannelStream, LinkKey(d, k));
      auto channel = static_cast<std::size_t>(rng::ToUnit(draw) * static_cast<double>(cfg.n_channels));
      txs.push_back({d, std::min(channel, cfg.n_channels - 1), start, start + toa});
      ++report.per_ed[d].sent;
    }
  }

  std::priority_queue<Event, std::vector<Event>, EventLater> queue;
  std::uint64_t seq = 0;
  for (std::size_t i = 0; i < txs.size(); ++i) queue.push({txs[i].start, seq++, false, i});

  std::vector<GwOutcome> outcome(txs.size() * n_gw, GwOutcome::kNone);
  std::vector<double> strongest(txs.size() * n_gw, -INFINITY);
  std::vector<std::size_t> busy_paths(n_gw, 0);
  std::vector<std::vector<std::size_t>> on_air(cfg.n_channels);

  while (!queue.empty()) {
    Event ev = queue.top();
    queue.pop();
    const auto& tx = txs[ev.tx];
    auto& active = on_air[tx.channel];

    if (!ev.is_end) {
      for (auto other : active) {
        const auto& o = txs[other];
        if (!(o.end > tx.start)) continue;
        for (std::size_t g = 0; g < n_gw; ++g) {
          auto& mine = strongest[ev.tx * n_gw + g];
          auto& theirs = strongest[other * n_gw + g];
          mine = std::max(mine, power[o.ed * n_gw + g]);
          theirs = std::max(theirs, power[tx.ed * n_gw + g]);
        }
      }
      for (std::size_t g = 0; g < n_gw; ++g) {
        auto& out = outcome[ev.tx * n_gw + g];
        if (power[tx.ed * n_gw + g] < sens) {
          out = GwOutcome::kBelowSensitivity;
        } else if (busy_paths[g] < cfg.gw_demod_paths) {
          ++busy_paths[g];
          out = GwOutcome::kLocked;
        } else {
          out = GwOutcome::kBlocked;
        }
      }
      active.push_back(ev.tx);
      queue.push({tx.end, seq++, true, ev.tx});
      continue;
    }

    active.erase(std::find(active.begin(), active.end(), ev.tx));
    bool received = false, collided = false, blocked = false;
    for (std::size_t g = 0; g < n_gw; ++g) {
      switch (outcome[ev.tx * n_gw + g]) {
        case GwOutcome::kLocked: {
          --busy_paths[g];
          double margin = power[tx.ed * n_gw + g] - strongest[ev.tx * n_gw + g];
          if (margin >= cfg.capture_threshold_db) received = true;
          else collided = true;
          break;
        }
        case GwOutcome::kBlocked: blocked = true; break;
        case GwOutcome::kBelowSensitivity:
        case GwOutcome::kNone: break;
      }
    }
    auto& ed = report.per_ed[tx.ed];
    if (received) {
      ++ed.delivered;
    } else if (collided) {
      ++ed.collided;
      ++report.collisions;
    } else if (blocked) {
      ++ed.demod_blocked;
      ++report.demod_blocked_drops;
    } else {
      ++ed.below_sensitivity;
      ++report.below_sensitivity_drops;
    }
  }

  std::size_t sent = 0, delivered = 0;
  for (const auto& e : report.per_ed) {
    sent += e.sent;
    delivered += e.delivered;
  }
  report.pdr_overall = sent ? static_cast<double>(delivered) / static_cast<double>(sent) : 0.0;
  return report;
}

double AvgPdr(std::span<const PdrReport> reports) {
  if (reports.empty()) Fail(ErrorCode::kValidation, "average PDR needs at least one report");
  double sum = 0.0;
  for (const auto& r : reports) sum += r.pdr_overall;
  return sum / static_cast<double>(reports.size());
}

std::string PdrReportToJson(const PdrReport& report) {
  json per_ed = json::array();
  for (std::size_t d = 0; d < report.per_ed.size(); ++d) {
    const auto& e = report.per_ed[d];
    per_ed.push_back({{"ed", d + 1},
                      {"sent", e.sent},
                      {"delivered", e.delivered},
                      {"collided", e.collided},
                      {"demod_blocked", e.demod_blocked},
                      {"below_sensitivity", e.below_sensitivity}});
  }
  json j = {{"pdr_overall", report.pdr_overall},
            {"per_ed", per_ed},
            {"collisions", report.collisions},
            {"below_sensitivity_drops", report.below_sensitivity_drops},
            {"demod_blocked_drops", report.demod_blocked_drops},
            {"seed", report.seed}};
  return j.dump(2) + "\n";
}

PdrReport ParsePdrReportJson(const std::string& text) {
  PdrReport r;
  try {
    auto j = json::parse(text);
    r.pdr_overall = j.at("pdr_overall").get<double>();
    r.collisions = j.at("collisions").get<std::size_t>();
    r.below_sensitivity_drops = j.at("below_sensitivity_drops").get<std::size_t>();
    r.demod_blocked_drops = j.value("demod_blocked_drops", std::size_t{0});
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("per_ed")) {
      EdOutcome o;
      o.sent = e.at("sent").get<std::size_t>();
      o.delivered = e.at("delivered").get<std::size_t>();
      o.collided = e.value("collided", std::size_t{0});
      o.demod_blocked = e.value("demod_blocked", std::size_t{0});
      o.below_sensitivity = e.value("below_sensitivity", std::size_t{0});
      if (o.delivered > o.sent) Fail(ErrorCode::kParse, "pdr report: delivered exceeds sent");
      r.per_ed.push_back(o);
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("pdr report: ") + e.what());
  }
  return r;
}

void SavePdrReport(const PdrReport& report, const std::filesystem::path& path) {
  io::WriteFile(path, PdrReportToJson(report));
}

PdrReport LoadPdrReport(const std::filesystem::path& path) {
  return ParsePdrReportJson(io::ReadFile(path));
}

}  // namespace lwplan
