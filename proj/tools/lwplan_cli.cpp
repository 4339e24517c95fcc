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

// Command-line front end. Everything below goes through the C API.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lwplan/lwplan.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(lwp_status status) {
  if (status != LWP_OK) {
    throw CliError(std::string(lwp_status_string(status)) + ": " + lwp_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using ScenarioPtr = std::unique_ptr<lwp_scenario, Deleter<lwp_scenario, lwp_scenario_free>>;
using ChannelPtr =
    std::unique_ptr<lwp_channel_config, Deleter<lwp_channel_config, lwp_channel_config_free>>;
using AlphaPtr = std::unique_ptr<lwp_gain_matrix, Deleter<lwp_gain_matrix, lwp_alpha_free>>;
using CoveragePtr = std::unique_ptr<lwp_coverage, Deleter<lwp_coverage, lwp_coverage_free>>;
using PlanPtr = std::unique_ptr<lwp_plan, Deleter<lwp_plan, lwp_plan_free>>;
using SweepPtr = std::unique_ptr<lwp_sweep, Deleter<lwp_sweep, lwp_sweep_free>>;
using TrafficPtr =
    std::unique_ptr<lwp_traffic_config, Deleter<lwp_traffic_config, lwp_traffic_config_free>>;
using ReportPtr = std::unique_ptr<lwp_pdr_report, Deleter<lwp_pdr_report, lwp_pdr_report_free>>;
using SummaryPtr = std::unique_ptr<lwp_summary, Deleter<lwp_summary, lwp_summary_free>>;

// Flag values; unset optionals fall back to the --config file, then to the
// defaults below.
struct Options {
  std::string config;
  std::optional<std::string> scenario, channel, rt_dir, solver, out, plan, alpha;
  std::optional<double> rho, rho_start, rho_end, rho_step, tx_power, duration;
  std::optional<std::size_t> packets;
  std::optional<int> sf;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> runs, labels, alphas;
  bool timing = false;
};

class RunConfig {
 public:
  RunConfig(const Options& opt) : opt_(opt) {
    if (!opt.config.empty()) {
      std::ifstream in(opt.config);
      if (!in) throw CliError("cannot open config '" + opt.config + "'");
      try {
        file_ = json::parse(in);
      } catch (const json::exception& e) {
        throw CliError("config '" + opt.config + "': " + e.what());
      }
      if (!file_.is_object()) throw CliError("config must be a JSON object");
    }
  }

  template <typename T>
  std::optional<T> Get(const std::optional<T>& flag, const char* key) const {
    if (flag) return flag;
    if (file_.contains(key) && !file_[key].is_null()) {
      try {
        return file_[key].get<T>();
      } catch (const json::exception& e) {
        throw CliError(std::string("config key '") + key + "': " + e.what());
      }
    }
    return std::nullopt;
  }

  template <typename T>
  T Get(const std::optional<T>& flag, const char* key, T fallback) const {
    return Get(flag, key).value_or(fallback);
  }

  std::string Require(const std::optional<std::string>& flag, const char* key,
                      const char* flag_name) const {
    auto v = Get(flag, key);
    if (!v) throw CliError(std::string("missing ") + flag_name);
    return *v;
  }

  // Channel config as JSON text, from --channel (model name or JSON file)
  // or the config file's "channel" entry (name or object).
  std::optional<std::string> ChannelJson() const {
    if (opt_.channel) return ChannelFromText(*opt_.channel);
    if (!file_.contains("channel") || file_["channel"].is_null()) return std::nullopt;
    const auto& c = file_["channel"];
    if (c.is_string()) return ChannelFromText(c.get<std::string>());
    return c.dump();
  }

  json Traffic() const {
    json t = file_.contains("traffic") ? file_["traffic"] : json::object();
    if (!t.is_object()) throw CliError("config key 'traffic' must be an object");
    if (auto v = Get(opt_.packets, "packets")) t["packets_per_ed"] = *v;
    if (auto v = Get(opt_.sf, "sf")) t["sf"] = *v;
    if (auto v = Get(opt_.duration, "duration")) t["duration_s"] = *v;
    if (auto v = Get(opt_.seed, "seed")) t["seed"] = *v;
    return t;
  }

  const Options& opt() const { return opt_; }

 private:
  static std::string ChannelFromText(const std::string& text) {
    if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
      std::ifstream in(text);
      if (!in) throw CliError("cannot open channel config '" + text + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    return json{{"model", text}}.dump();
  }

  const Options& opt_;
  json file_ = json::object();
};

lwp_solver SolverFrom(const std::string& name) {
  if (name == "exact") return LWP_SOLVER_EXACT;
  if (name == "greedy") return LWP_SOLVER_GREEDY;
  throw CliError("--solver must be exact or greedy");
}

fs::path OutDir(const RunConfig& rc) {
  fs::path dir = rc.Get(rc.opt().out, "out", std::string("."));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

ScenarioPtr LoadScenario(const RunConfig& rc) {
  auto path = rc.Require(rc.opt().scenario, "scenario", "--scenario");
  lwp_scenario* s = nullptr;
  Check(lwp_scenario_load(path.c_str(), &s));
  return ScenarioPtr(s);
}

void PrintWarnings(const lwp_gain_matrix* alpha) {
  for (std::size_t i = 0; i < lwp_alpha_num_warnings(alpha); ++i) {
    std::cerr << "warning: " << lwp_alpha_warning(alpha, i) << "\n";
  }
}

// Alpha from exactly one of: channel model, rt directory.
AlphaPtr BuildAlpha(const RunConfig& rc, const lwp_scenario* scenario) {
  auto channel = rc.ChannelJson();
  auto rt_dir = rc.Get(rc.opt().rt_dir, "rt_dir");
  if (channel && rt_dir) throw CliError("--channel and --rt-dir are mutually exclusive");
  if (!channel && !rt_dir) throw CliError("one of --channel or --rt-dir is required");
  double tx = rc.Get(rc.opt().tx_power, "tx_power", 0.0);
  lwp_gain_matrix* alpha = nullptr;
  if (channel) {
    lwp_channel_config* cfg = nullptr;
    Check(lwp_channel_config_from_json(channel->c_str(), &cfg));
    ChannelPtr owned(cfg);
    Check(lwp_alpha_build(scenario, cfg, tx, &alpha));
  } else {
    Check(lwp_alpha_from_rt_dir(rt_dir->c_str(), scenario, tx, &alpha));
  }
  AlphaPtr out(alpha);
  PrintWarnings(out.get());
  return out;
}

std::vector<std::size_t> Selected(const lwp_plan* plan, bool uncovered = false) {
  std::size_t n = 0;
  Check(uncovered ? lwp_plan_uncovered(plan, nullptr, 0, &n) : lwp_plan_selected(plan, nullptr, 0, &n));
  std::vector<std::size_t> v(n);
  Check(uncovered ? lwp_plan_uncovered(plan, v.data(), n, &n) : lwp_plan_selected(plan, v.data(), n, &n));
  return v;
}

std::string Join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int CmdPlan(const RunConfig& rc) {
  auto scenario = LoadScenario(rc);
  auto alpha = BuildAlpha(rc, scenario.get());
  double rho = rc.Get(rc.opt().rho, "rho", -90.0);
  auto solver = SolverFrom(rc.Get(rc.opt().solver, "solver", std::string("exact")));
  auto out = OutDir(rc);

  lwp_coverage* cov = nullptr;
  Check(lwp_coverage_threshold(alpha.get(), rho, &cov));
  CoveragePtr coverage(cov);
  lwp_plan* p = nullptr;
  Check(lwp_plan_solve(coverage.get(), solver, lwp_alpha_source(alpha.get()), &p));
  PlanPtr plan(p);

  auto plan_path = (out / "plan.json").string();
  auto alpha_path = (out / "alpha.csv").string();
  Check(lwp_plan_save(plan.get(), plan_path.c_str(), rc.opt().timing ? 1 : 0));
  Check(lwp_alpha_save_csv(alpha.get(), alpha_path.c_str()));

  if (lwp_plan_status(plan.get()) == LWP_SOLVE_INFEASIBLE) {
    std::cout << "infeasible at rho " << rho << " dBm; uncovered devices: "
              << Join(Selected(plan.get(), true)) << "\n";
    return kExitInfeasible;
  }
  std::cout << "objective " << lwp_plan_objective(plan.get()) << ", selected "
            << Join(Selected(plan.get())) << "\n";
  return kExitOk;
}

int CmdSweep(const RunConfig& rc) {
  auto scenario = LoadScenario(rc);
  auto alpha = BuildAlpha(rc, scenario.get());
  double start = rc.Get(rc.opt().rho_start, "rho_start", -120.0);
  double end = rc.Get(rc.opt().rho_end, "rho_end", -80.0);
  double step = rc.Get(rc.opt().rho_step, "rho_step", 5.0);
  auto solver = SolverFrom(rc.Get(rc.opt().solver, "solver", std::string("exact")));
  auto out = OutDir(rc);

  std::size_t n = 0;
  Check(lwp_rho_range(start, end, step, nullptr, 0, &n));
  std::vector<double> rhos(n);
  Check(lwp_rho_range(start, end, step, rhos.data(), n, &n));

  lwp_sweep* s = nullptr;
  Check(lwp_sweep_run(alpha.get(), rhos.data(), rhos.size(), solver, &s));
  SweepPtr sweep(s);
  auto path = (out / "sweep.csv").string();
  Check(lwp_sweep_save_csv(sweep.get(), path.c_str()));
  std::cout << "wrote " << lwp_sweep_size(sweep.get()) << " rows to " << path << "\n";
  return kExitOk;
}

int CmdSimulate(const RunConfig& rc) {
  auto plan_path = rc.Require(rc.opt().plan, "plan", "--plan");
  lwp_plan* p = nullptr;
  Check(lwp_plan_load(plan_path.c_str(), &p));
  PlanPtr plan(p);
  if (lwp_plan_status(plan.get()) == LWP_SOLVE_INFEASIBLE) {
    std::cerr << "error: plan '" << plan_path << "' is infeasible; nothing to simulate\n";
    return kExitInfeasible;
  }
  auto scenario = LoadScenario(rc);
  AlphaPtr alpha;
  if (auto alpha_path = rc.Get(rc.opt().alpha, "alpha")) {
    lwp_gain_matrix* a = nullptr;
    Check(lwp_alpha_load_csv(alpha_path->c_str(), &a));
    alpha.reset(a);
  } else {
    alpha = BuildAlpha(rc, scenario.get());
  }
  auto traffic_json = rc.Traffic().dump();
  lwp_traffic_config* t = nullptr;
  Check(lwp_traffic_config_from_json(traffic_json.c_str(), &t));
  TrafficPtr traffic(t);
  auto out = OutDir(rc);

  lwp_pdr_report* r = nullptr;
  Check(lwp_simulate(scenario.get(), plan.get(), alpha.get(), traffic.get(), &r));
  ReportPtr report(r);
  auto path = (out / "pdr.json").string();
  Check(lwp_pdr_report_save(report.get(), path.c_str()));
  std::cout << "pdr " << lwp_pdr_report_overall(report.get()) << "\n";
  return kExitOk;
}

int CmdIngestRt(const RunConfig& rc) {
  auto scenario = LoadScenario(rc);
  auto rt_dir = rc.Require(rc.opt().rt_dir, "rt_dir", "--rt-dir");
  double tx = rc.Get(rc.opt().tx_power, "tx_power", 0.0);
  auto out = OutDir(rc);
  lwp_gain_matrix* a = nullptr;
  Check(lwp_alpha_from_rt_dir(rt_dir.c_str(), scenario.get(), tx, &a));
  AlphaPtr alpha(a);
  auto path = (out / "alpha.csv").string();
  Check(lwp_alpha_save_csv(alpha.get(), path.c_str()));
  std::cout << "wrote " << lwp_alpha_num_eds(alpha.get()) << "x"
            << lwp_alpha_num_candidates(alpha.get()) << " matrix to " << path << "\n";
  return kExitOk;
}

std::vector<double> FiniteEntries(const lwp_gain_matrix* alpha) {
  std::vector<double> v;
  for (std::size_t d = 1; d <= lwp_alpha_num_eds(alpha); ++d) {
    for (std::size_t p = 1; p <= lwp_alpha_num_candidates(alpha); ++p) {
      double x = 0;
      Check(lwp_alpha_get(alpha, d, p, &x));
      if (std::isfinite(x)) v.push_back(x);
    }
  }
  return v;
}

std::string SafeLabel(std::string label, std::set<std::string>& used) {
  for (auto& c : label) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) c = '_';
  }
  if (label.empty()) label = "run";
  std::string candidate = label;
  for (int i = 2; used.count(candidate); ++i) candidate = label + "_" + std::to_string(i);
  used.insert(candidate);
  return candidate;
}

int CmdReport(const RunConfig& rc) {
  const auto& opt = rc.opt();
  if (opt.runs.empty() && opt.alphas.empty()) throw CliError("report needs --run or --alpha");
  if (!opt.labels.empty() && opt.labels.size() != opt.runs.size()) {
    throw CliError("--label must be given once per --run");
  }
  auto out = OutDir(rc);
  std::set<std::string> used;

  lwp_summary* s = nullptr;
  Check(lwp_summary_new(&s));
  SummaryPtr summary(s);
  for (std::size_t i = 0; i < opt.runs.size(); ++i) {
    fs::path dir = opt.runs[i];
    lwp_plan* p = nullptr;
    Check(lwp_plan_load((dir / "plan.json").string().c_str(), &p));
    PlanPtr plan(p);
    lwp_gain_matrix* a = nullptr;
    Check(lwp_alpha_load_csv((dir / "alpha.csv").string().c_str(), &a));
    AlphaPtr alpha(a);
    ReportPtr pdr;
    if (fs::exists(dir / "pdr.json")) {
      lwp_pdr_report* r = nullptr;
      Check(lwp_pdr_report_load((dir / "pdr.json").string().c_str(), &r));
      pdr.reset(r);
    }
    std::string label = opt.labels.empty() ? lwp_plan_channel_source(plan.get()) : opt.labels[i];
    label = SafeLabel(label, used);
    Check(lwp_summary_add(summary.get(), label.c_str(), plan.get(), alpha.get(), pdr.get()));

    std::vector<double> values;
    if (lwp_plan_status(plan.get()) != LWP_SOLVE_INFEASIBLE) {
      std::size_t n = 0;
      Check(lwp_plan_ed_best_powers(plan.get(), alpha.get(), nullptr, 0, &n));
      values.resize(n);
      Check(lwp_plan_ed_best_powers(plan.get(), alpha.get(), values.data(), n, &n));
    } else {
      values = FiniteEntries(alpha.get());
    }
    auto cdf_path = (out / ("cdf_" + label + ".csv")).string();
    Check(lwp_cdf_save_csv(values.data(), values.size(), cdf_path.c_str()));
  }
  for (const auto& alpha_path : opt.alphas) {
    lwp_gain_matrix* a = nullptr;
    Check(lwp_alpha_load_csv(alpha_path.c_str(), &a));
    AlphaPtr alpha(a);
    auto label = SafeLabel(fs::path(alpha_path).stem().string(), used);
    auto values = FiniteEntries(alpha.get());
    auto cdf_path = (out / ("cdf_" + label + ".csv")).string();
    Check(lwp_cdf_save_csv(values.data(), values.size(), cdf_path.c_str()));
  }
  if (!opt.runs.empty()) {
    auto path = (out / "summary.csv").string();
    Check(lwp_summary_save_csv(summary.get(), path.c_str()));
    std::cout << "wrote " << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LoRaWAN gateway placement planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lwp_version()));
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "JSON run configuration (flags take precedence)");
    cmd->add_option("--out", opt.out, "output directory");
  };
  auto add_channel = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", opt.scenario, "scenario JSON file");
    cmd->add_option("--channel", opt.channel,
                    "channel model name (log_distance, okumura_hata, cost231, uma_3gpp) or JSON file");
    cmd->add_option("--rt-dir", opt.rt_dir, "directory of gw_<p>.csv coverage maps");
    cmd->add_option("--tx-power", opt.tx_power, "transmit power in dBm (default 0)");
  };

  auto* plan = app.add_subcommand("plan", "solve the placement at one threshold");
  add_common(plan);
  add_channel(plan);
  plan->add_option("--rho", opt.rho, "coverage threshold in dBm (default -90)");
  plan->add_option("--solver", opt.solver, "exact or greedy (default exact)");
  plan->add_flag("--timing", opt.timing, "record solver runtime in plan.json");

  auto* sweep = app.add_subcommand("sweep", "solve across a range of thresholds");
  add_common(sweep);
  add_channel(sweep);
  sweep->add_option("--rho-start", opt.rho_start, "first threshold in dBm (default -120)");
  sweep->add_option("--rho-end", opt.rho_end, "last threshold in dBm (default -80)");
  sweep->add_option("--rho-step", opt.rho_step, "threshold step in dB (default 5)");
  sweep->add_option("--solver", opt.solver, "exact or greedy (default exact)");

  auto* simulate = app.add_subcommand("simulate", "simulate LoRaWAN uplinks for a plan");
  add_common(simulate);
  add_channel(simulate);
  simulate->add_option("--plan", opt.plan, "plan.json written by 'plan'");
  simulate->add_option("--alpha", opt.alpha, "use this alpha.csv instead of a channel source");
  simulate->add_option("--packets", opt.packets, "packets per device (default 1000)");
  simulate->add_option("--sf", opt.sf, "spreading factor (default 7)");
  simulate->add_option("--duration", opt.duration, "simulated seconds (default 600)");
  simulate->add_option("--seed", opt.seed, "simulation seed (default 1)");

  auto* ingest = app.add_subcommand("ingest-rt", "build alpha.csv from ray-tracing coverage maps");
  add_common(ingest);
  ingest->add_option("--scenario", opt.scenario, "scenario JSON file");
  ingest->add_option("--rt-dir", opt.rt_dir, "directory of gw_<p>.csv coverage maps");
  ingest->add_option("--tx-power", opt.tx_power, "transmit power in dBm (default 0)");

  auto* report = app.add_subcommand("report", "CDF and summary tables from finished runs");
  add_common(report);
  report->add_option("--run", opt.runs, "run directory with plan.json, alpha.csv, [pdr.json]");
  report->add_option("--label", opt.labels, "summary label per --run");
  report->add_option("--alpha", opt.alphas, "extra alpha.csv for a CDF of all entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    RunConfig rc(opt);
    if (plan->parsed()) return CmdPlan(rc);
    if (sweep->parsed()) return CmdSweep(rc);
    if (simulate->parsed()) return CmdSimulate(rc);
    if (ingest->parsed()) return CmdIngestRt(rc);
    if (report->parsed()) return CmdReport(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
