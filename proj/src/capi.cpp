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

#include "lwplan/lwplan.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lwplan/channel_models.hpp"
#include "lwplan/coverage.hpp"
#include "lwplan/error.hpp"
#include "lwplan/lorawan_sim.hpp"
#include "lwplan/placement.hpp"
#include "lwplan/report.hpp"
#include "lwplan/rt_ingest.hpp"
#include "lwplan/scenario.hpp"
#include "lwplan/text_io.hpp"

struct lwp_scenario {
  lwplan::Scenario rep;
};
struct lwp_channel_config {
  lwplan::ChannelConfig rep;
  std::string model_name;
};
struct lwp_gain_matrix {
  lwplan::GainMatrix rep;
};
struct lwp_gain_map {
  lwplan::GainMap rep;
};
struct lwp_coverage {
  lwplan::CoverageMatrix rep;
};
struct lwp_plan {
  lwplan::Plan rep;
};
struct lwp_sweep {
  lwplan::SweepReport rep;
};
struct lwp_traffic_config {
  lwplan::TrafficConfig rep;
};
struct lwp_pdr_report {
  lwplan::PdrReport rep;
};
struct lwp_summary {
  std::vector<lwplan::SummaryRow> rows;
};

namespace {

thread_local std::string g_last_error;

lwp_status FromCode(lwplan::ErrorCode code) {
  switch (code) {
    case lwplan::ErrorCode::kValidation: return LWP_ERR_VALIDATION;
    case lwplan::ErrorCode::kParse: return LWP_ERR_PARSE;
    case lwplan::ErrorCode::kIo: return LWP_ERR_IO;
    case lwplan::ErrorCode::kDomain: return LWP_ERR_DOMAIN;
    case lwplan::ErrorCode::kBounds: return LWP_ERR_BOUNDS;
    case lwplan::ErrorCode::kRefused: return LWP_ERR_REFUSED;
  }
  return LWP_ERR_INTERNAL;
}

lwp_status SetError(lwp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
lwp_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LWP_OK;
  } catch (const lwplan::Error& e) {
    return SetError(FromCode(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(LWP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(LWP_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(LWP_ERR_INTERNAL, "unknown error");
  }
}

#define LWP_REQUIRE(ptr)                                                       \
  do {                                                                         \
    if ((ptr) == nullptr) {                                                    \
      return SetError(LWP_ERR_INVALID_ARGUMENT, #ptr " must not be NULL");     \
    }                                                                          \
  } while (0)

template <typename T>
void CopyOut(const std::vector<T>& src, T* buf, size_t cap, size_t* count) {
  *count = src.size();
  size_t n = std::min(cap, src.size());
  if (n > 0) std::memcpy(buf, src.data(), n * sizeof(T));
}

lwplan::Environment ToEnv(lwp_environment env) {
  switch (env) {
    case LWP_ENV_URBAN_SMALL_MEDIUM: return lwplan::Environment::kUrbanSmallMedium;
    case LWP_ENV_URBAN_LARGE: return lwplan::Environment::kUrbanLarge;
    case LWP_ENV_SUBURBAN: return lwplan::Environment::kSuburban;
  }
  lwplan::Fail(lwplan::ErrorCode::kValidation, "unknown environment");
}

lwplan::LosMode ToLos(lwp_los_mode mode) {
  switch (mode) {
    case LWP_LOS_ALWAYS: return lwplan::LosMode::kAlwaysLos;
    case LWP_LOS_NEVER: return lwplan::LosMode::kAlwaysNlos;
    case LWP_LOS_PROBABILISTIC: return lwplan::LosMode::kProbabilistic;
  }
  lwplan::Fail(lwplan::ErrorCode::kValidation, "unknown LOS mode");
}

lwplan::Solver ToSolver(lwp_solver solver) {
  switch (solver) {
    case LWP_SOLVER_EXACT: return lwplan::Solver::kExact;
    case LWP_SOLVER_GREEDY: return lwplan::Solver::kGreedy;
    case LWP_SOLVER_BRUTE_FORCE: return lwplan::Solver::kBruteForce;
  }
  lwplan::Fail(lwplan::ErrorCode::kValidation, "unknown solver");
}

lwp_solve_status FromStatus(lwplan::SolveStatus s) {
  switch (s) {
    case lwplan::SolveStatus::kOptimal: return LWP_SOLVE_OPTIMAL;
    case lwplan::SolveStatus::kFeasibleHeuristic: return LWP_SOLVE_FEASIBLE_HEURISTIC;
    case lwplan::SolveStatus::kInfeasible: return LWP_SOLVE_INFEASIBLE;
  }
  return LWP_SOLVE_INFEASIBLE;
}

lwplan::Position ToPosition(const double xyz[3]) { return {xyz[0], xyz[1], xyz[2]}; }

void CheckIndex(size_t index, size_t size, const char* what) {
  if (index < 1 || index > size) {
    lwplan::Fail(lwplan::ErrorCode::kBounds, std::string(what) + " index " +
                                                 std::to_string(index) + " outside 1.." +
                                                 std::to_string(size));
  }
}

}  // namespace

extern "C" {

const char* lwp_version(void) { return "0.1.0"; }

const char* lwp_last_error(void) { return g_last_error.c_str(); }

const char* lwp_status_string(lwp_status status) {
  switch (status) {
    case LWP_OK: return "ok";
    case LWP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LWP_ERR_VALIDATION: return "validation error";
    case LWP_ERR_PARSE: return "parse error";
    case LWP_ERR_IO: return "i/o error";
    case LWP_ERR_DOMAIN: return "domain error";
    case LWP_ERR_BOUNDS: return "bounds error";
    case LWP_ERR_REFUSED: return "refused";
    case LWP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// scenario

lwp_status lwp_scenario_load(const char* path, lwp_scenario** out) {
  LWP_REQUIRE(path);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_scenario{lwplan::LoadScenario(path)}; });
}

lwp_status lwp_scenario_save(const lwp_scenario* scenario, const char* path) {
  LWP_REQUIRE(scenario);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::SaveScenario(scenario->rep, path); });
}

lwp_status lwp_scenario_replication_fixture(uint64_t seed, lwp_scenario** out) {
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_scenario{lwplan::ReplicationFixture(seed)}; });
}

lwp_status lwp_scenario_build_grid(double origin_x, double origin_y, size_t nx, size_t ny,
                                   double spacing_m, double gw_height_m, const double* ed_xyz,
                                   size_t n_eds, lwp_scenario** out) {
  LWP_REQUIRE(out);
  if (n_eds > 0) LWP_REQUIRE(ed_xyz);
  return Guard([&] {
    std::vector<lwplan::Position> eds;
    for (size_t i = 0; i < n_eds; ++i) eds.push_back(ToPosition(ed_xyz + 3 * i));
    auto s = lwplan::BuildGrid({origin_x, origin_y, 0.0}, nx, ny, spacing_m, gw_height_m,
                               std::move(eds));
    lwplan::ValidateScenario(s);
    *out = new lwp_scenario{std::move(s)};
  });
}

size_t lwp_scenario_num_candidates(const lwp_scenario* s) {
  return s ? s->rep.num_candidates() : 0;
}

size_t lwp_scenario_num_eds(const lwp_scenario* s) { return s ? s->rep.num_eds() : 0; }

lwp_status lwp_scenario_candidate(const lwp_scenario* s, size_t p, double xyz[3]) {
  LWP_REQUIRE(s);
  LWP_REQUIRE(xyz);
  return Guard([&] {
    CheckIndex(p, s->rep.num_candidates(), "candidate");
    const auto& pos = s->rep.gw_candidates[p - 1];
    xyz[0] = pos.x_m;
    xyz[1] = pos.y_m;
    xyz[2] = pos.z_m;
  });
}

lwp_status lwp_scenario_ed(const lwp_scenario* s, size_t d, double xyz[3]) {
  LWP_REQUIRE(s);
  LWP_REQUIRE(xyz);
  return Guard([&] {
    CheckIndex(d, s->rep.num_eds(), "device");
    const auto& pos = s->rep.eds[d - 1];
    xyz[0] = pos.x_m;
    xyz[1] = pos.y_m;
    xyz[2] = pos.z_m;
  });
}

void lwp_scenario_free(lwp_scenario* s) { delete s; }

double lwp_distance_3d(const double a[3], const double b[3]) {
  return lwplan::Distance3d(ToPosition(a), ToPosition(b));
}

double lwp_distance_2d(const double a[3], const double b[3]) {
  return lwplan::Distance2d(ToPosition(a), ToPosition(b));
}

// channel models

lwp_status lwp_channel_config_default(lwp_channel_model model, lwp_channel_config** out) {
  LWP_REQUIRE(out);
  return Guard([&] {
    lwplan::ChannelConfig cfg;
    switch (model) {
      case LWP_MODEL_LOG_DISTANCE: cfg.model = lwplan::ChannelModel::kLogDistance; break;
      case LWP_MODEL_OKUMURA_HATA: cfg.model = lwplan::ChannelModel::kOkumuraHata; break;
      case LWP_MODEL_COST231: cfg.model = lwplan::ChannelModel::kCost231; break;
      case LWP_MODEL_UMA_3GPP: cfg.model = lwplan::ChannelModel::kUma3gpp; break;
      default: lwplan::Fail(lwplan::ErrorCode::kValidation, "unknown channel model");
    }
    *out = new lwp_channel_config{cfg, std::string(lwplan::ToString(cfg.model))};
  });
}

lwp_status lwp_channel_config_from_json(const char* json, lwp_channel_config** out) {
  LWP_REQUIRE(json);
  LWP_REQUIRE(out);
  return Guard([&] {
    auto cfg = lwplan::ParseChannelConfigJson(json);
    *out = new lwp_channel_config{cfg, std::string(lwplan::ToString(cfg.model))};
  });
}

const char* lwp_channel_config_model_name(const lwp_channel_config* cfg) {
  return cfg ? cfg->model_name.c_str() : "";
}

void lwp_channel_config_free(lwp_channel_config* cfg) { delete cfg; }

lwp_status lwp_free_space_pl(double d_m, double fc_hz, double* out_db) {
  LWP_REQUIRE(out_db);
  return Guard([&] { *out_db = lwplan::FreeSpacePathLoss(d_m, fc_hz); });
}

lwp_status lwp_log_distance_pl(double d_m, double fc_hz, double exponent, double d0_m,
                               double ref_loss_db, double* out_db) {
  LWP_REQUIRE(out_db);
  return Guard([&] {
    std::optional<double> ref;
    if (!std::isnan(ref_loss_db)) ref = ref_loss_db;
    *out_db = lwplan::LogDistancePathLoss(d_m, fc_hz, exponent, d0_m, ref);
  });
}

lwp_status lwp_okumura_hata_pl(double d2d_m, double fc_hz, double hb_m, double hm_m,
                               lwp_environment env, double* out_db) {
  LWP_REQUIRE(out_db);
  return Guard([&] { *out_db = lwplan::OkumuraHataPathLoss(d2d_m, fc_hz, hb_m, hm_m, ToEnv(env)); });
}

lwp_status lwp_cost231_pl(double d2d_m, double fc_hz, double hb_m, double hm_m,
                          lwp_environment env, double city_correction_db, double* out_db) {
  LWP_REQUIRE(out_db);
  return Guard([&] {
    *out_db = lwplan::Cost231PathLoss(d2d_m, fc_hz, hb_m, hm_m, ToEnv(env), city_correction_db);
  });
}

lwp_status lwp_uma_pl(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m,
                      lwp_los_mode mode, uint64_t seed, uint64_t link_key, double* out_db) {
  LWP_REQUIRE(out_db);
  return Guard([&] {
    *out_db = lwplan::Uma3gppPathLoss(d2d_m, fc_hz, h_bs_m, h_ut_m, ToLos(mode), seed, link_key);
  });
}

double lwp_received_power(double tx_power_dbm, double pl_db, double shadowing_db) {
  return lwplan::ReceivedPower(tx_power_dbm, pl_db, shadowing_db);
}

// alpha

lwp_status lwp_alpha_build(const lwp_scenario* scenario, const lwp_channel_config* cfg,
                           double tx_power_dbm, lwp_gain_matrix** out) {
  LWP_REQUIRE(scenario);
  LWP_REQUIRE(cfg);
  LWP_REQUIRE(out);
  return Guard([&] {
    *out = new lwp_gain_matrix{lwplan::BuildAlpha(scenario->rep, cfg->rep, tx_power_dbm)};
  });
}

lwp_status lwp_alpha_from_rt_dir(const char* dir, const lwp_scenario* scenario,
                                 double tx_power_dbm, lwp_gain_matrix** out) {
  LWP_REQUIRE(dir);
  LWP_REQUIRE(scenario);
  LWP_REQUIRE(out);
  return Guard([&] {
    *out = new lwp_gain_matrix{lwplan::BuildAlphaFromMaps(dir, scenario->rep, tx_power_dbm)};
  });
}

lwp_status lwp_alpha_load_csv(const char* path, lwp_gain_matrix** out) {
  LWP_REQUIRE(path);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_gain_matrix{lwplan::LoadAlphaCsv(path)}; });
}

lwp_status lwp_alpha_save_csv(const lwp_gain_matrix* alpha, const char* path) {
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::SaveAlphaCsv(alpha->rep, path); });
}

size_t lwp_alpha_num_eds(const lwp_gain_matrix* a) { return a ? a->rep.num_eds() : 0; }

size_t lwp_alpha_num_candidates(const lwp_gain_matrix* a) {
  return a ? a->rep.num_candidates() : 0;
}

lwp_status lwp_alpha_get(const lwp_gain_matrix* a, size_t d, size_t p, double* out) {
  LWP_REQUIRE(a);
  LWP_REQUIRE(out);
  return Guard([&] {
    CheckIndex(d, a->rep.num_eds(), "device");
    CheckIndex(p, a->rep.num_candidates(), "candidate");
    *out = a->rep.at(d - 1, p - 1);
  });
}

const char* lwp_alpha_source(const lwp_gain_matrix* a) { return a ? a->rep.source.c_str() : ""; }

size_t lwp_alpha_num_warnings(const lwp_gain_matrix* a) { return a ? a->rep.warnings.size() : 0; }

const char* lwp_alpha_warning(const lwp_gain_matrix* a, size_t i) {
  if (!a || i >= a->rep.warnings.size()) return nullptr;
  return a->rep.warnings[i].c_str();
}

void lwp_alpha_free(lwp_gain_matrix* a) { delete a; }

// rt maps

lwp_status lwp_gain_map_load(const char* path, size_t gw_index, lwp_gain_map** out) {
  LWP_REQUIRE(path);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_gain_map{lwplan::LoadGainMap(path, gw_index)}; });
}

lwp_status lwp_gain_map_sample(const lwp_gain_map* map, double x_m, double y_m, double* out_db) {
  LWP_REQUIRE(map);
  LWP_REQUIRE(out_db);
  return Guard([&] { *out_db = lwplan::SampleGain(map->rep, {x_m, y_m, 1.0}); });
}

void lwp_gain_map_free(lwp_gain_map* map) { delete map; }

lwp_status lwp_rt_synthesize(const lwp_scenario* scenario, const lwp_channel_config* cfg,
                             double cell_size_m, double rx_height_m, const char* dir,
                             double perturbation_sigma_db, uint64_t seed) {
  LWP_REQUIRE(scenario);
  LWP_REQUIRE(cfg);
  LWP_REQUIRE(dir);
  return Guard([&] {
    auto raster = lwplan::RasterForDevices(scenario->rep, cell_size_m);
    lwplan::SynthesizeGainMaps(scenario->rep, cfg->rep, raster, rx_height_m, dir,
                               perturbation_sigma_db, seed);
  });
}

// coverage

lwp_status lwp_coverage_threshold(const lwp_gain_matrix* alpha, double rho_dbm,
                                  lwp_coverage** out) {
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_coverage{lwplan::Threshold(alpha->rep, rho_dbm)}; });
}

lwp_status lwp_coverage_from_bits(const uint8_t* bits, size_t num_eds, size_t num_candidates,
                                  double rho_dbm, lwp_coverage** out) {
  LWP_REQUIRE(bits);
  LWP_REQUIRE(out);
  return Guard([&] {
    lwplan::CoverageMatrix cov(num_eds, num_candidates, rho_dbm);
    for (size_t d = 0; d < num_eds; ++d) {
      for (size_t p = 0; p < num_candidates; ++p) cov.set(d, p, bits[d * num_candidates + p] != 0);
    }
    *out = new lwp_coverage{std::move(cov)};
  });
}

int lwp_coverage_get(const lwp_coverage* cov, size_t d, size_t p) {
  if (!cov || d < 1 || p < 1 || d > cov->rep.num_eds() || p > cov->rep.num_candidates()) {
    return -1;
  }
  return cov->rep.covers(d - 1, p - 1) ? 1 : 0;
}

lwp_status lwp_coverage_uncovered(const lwp_coverage* cov, size_t* buf, size_t cap,
                                  size_t* count) {
  LWP_REQUIRE(cov);
  LWP_REQUIRE(count);
  if (cap > 0) LWP_REQUIRE(buf);
  return Guard([&] { CopyOut(lwplan::UncoveredEds(cov->rep), buf, cap, count); });
}

void lwp_coverage_free(lwp_coverage* cov) { delete cov; }

// placement

lwp_status lwp_plan_solve(const lwp_coverage* cov, lwp_solver solver, const char* channel_source,
                          lwp_plan** out) {
  LWP_REQUIRE(cov);
  LWP_REQUIRE(out);
  return Guard([&] {
    lwplan::Plan plan;
    plan.rho_dbm = cov->rep.rho_dbm();
    plan.channel_source = channel_source ? channel_source : "";
    plan.solution = lwplan::Solve(cov->rep, ToSolver(solver));
    *out = new lwp_plan{std::move(plan)};
  });
}

lwp_status lwp_plan_load(const char* path, lwp_plan** out) {
  LWP_REQUIRE(path);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_plan{lwplan::LoadPlan(path)}; });
}

lwp_status lwp_plan_save(const lwp_plan* plan, const char* path, int include_runtime) {
  LWP_REQUIRE(plan);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::SavePlan(plan->rep, path, include_runtime != 0); });
}

lwp_solve_status lwp_plan_status(const lwp_plan* plan) {
  return plan ? FromStatus(plan->rep.solution.status) : LWP_SOLVE_INFEASIBLE;
}

size_t lwp_plan_objective(const lwp_plan* plan) { return plan ? plan->rep.solution.objective : 0; }

double lwp_plan_rho(const lwp_plan* plan) { return plan ? plan->rep.rho_dbm : NAN; }

const char* lwp_plan_channel_source(const lwp_plan* plan) {
  return plan ? plan->rep.channel_source.c_str() : "";
}

uint64_t lwp_plan_nodes_explored(const lwp_plan* plan) {
  return plan ? plan->rep.solution.stats.nodes_explored : 0;
}

lwp_status lwp_plan_selected(const lwp_plan* plan, size_t* buf, size_t cap, size_t* count) {
  LWP_REQUIRE(plan);
  LWP_REQUIRE(count);
  if (cap > 0) LWP_REQUIRE(buf);
  return Guard([&] { CopyOut(plan->rep.solution.selected, buf, cap, count); });
}

lwp_status lwp_plan_uncovered(const lwp_plan* plan, size_t* buf, size_t cap, size_t* count) {
  LWP_REQUIRE(plan);
  LWP_REQUIRE(count);
  if (cap > 0) LWP_REQUIRE(buf);
  return Guard([&] { CopyOut(plan->rep.solution.uncovered, buf, cap, count); });
}

lwp_status lwp_plan_avg_ed_best_power(const lwp_plan* plan, const lwp_gain_matrix* alpha,
                                      double* out_dbm) {
  LWP_REQUIRE(plan);
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(out_dbm);
  return Guard([&] { *out_dbm = lwplan::AvgEdBestPower(alpha->rep, plan->rep.solution); });
}

lwp_status lwp_plan_ed_best_powers(const lwp_plan* plan, const lwp_gain_matrix* alpha,
                                   double* buf, size_t cap, size_t* count) {
  LWP_REQUIRE(plan);
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(count);
  if (cap > 0) LWP_REQUIRE(buf);
  return Guard([&] { CopyOut(lwplan::EdBestPowers(alpha->rep, plan->rep.solution), buf, cap, count); });
}

void lwp_plan_free(lwp_plan* plan) { delete plan; }

lwp_status lwp_rho_range(double start, double end, double step, double* buf, size_t cap,
                         size_t* count) {
  LWP_REQUIRE(count);
  if (cap > 0) LWP_REQUIRE(buf);
  return Guard([&] { CopyOut(lwplan::RhoRange(start, end, step), buf, cap, count); });
}

lwp_status lwp_sweep_run(const lwp_gain_matrix* alpha, const double* rhos, size_t n,
                         lwp_solver solver, lwp_sweep** out) {
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(out);
  if (n > 0) LWP_REQUIRE(rhos);
  return Guard([&] {
    *out = new lwp_sweep{lwplan::SweepRho(alpha->rep, std::span<const double>(rhos, n),
                                          ToSolver(solver))};
  });
}

lwp_status lwp_sweep_save_csv(const lwp_sweep* sweep, const char* path) {
  LWP_REQUIRE(sweep);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::io::WriteFile(path, lwplan::SweepToCsv(sweep->rep)); });
}

size_t lwp_sweep_size(const lwp_sweep* sweep) { return sweep ? sweep->rep.entries.size() : 0; }

lwp_status lwp_sweep_entry(const lwp_sweep* sweep, size_t i, double* rho_dbm,
                           lwp_solve_status* status, size_t* objective, double* avg_dbm) {
  LWP_REQUIRE(sweep);
  if (i >= sweep->rep.entries.size()) {
    return SetError(LWP_ERR_BOUNDS, "sweep entry " + std::to_string(i) + " out of range");
  }
  const auto& e = sweep->rep.entries[i];
  if (rho_dbm) *rho_dbm = e.rho_dbm;
  if (status) *status = FromStatus(e.solution.status);
  if (objective) *objective = e.solution.objective;
  if (avg_dbm) *avg_dbm = e.avg_ed_best_power_dbm.value_or(NAN);
  return LWP_OK;
}

void lwp_sweep_free(lwp_sweep* sweep) { delete sweep; }

// simulation

lwp_status lwp_traffic_config_from_json(const char* json, lwp_traffic_config** out) {
  LWP_REQUIRE(json);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_traffic_config{lwplan::ParseTrafficConfigJson(json)}; });
}

lwp_status lwp_traffic_time_on_air(const lwp_traffic_config* cfg, double* out_s) {
  LWP_REQUIRE(cfg);
  LWP_REQUIRE(out_s);
  return Guard([&] { *out_s = lwplan::TimeOnAir(cfg->rep); });
}

void lwp_traffic_config_free(lwp_traffic_config* cfg) { delete cfg; }

lwp_status lwp_sensitivity(int sf, double bandwidth_hz, double* out_dbm) {
  LWP_REQUIRE(out_dbm);
  return Guard([&] { *out_dbm = lwplan::Sensitivity(sf, bandwidth_hz); });
}

lwp_status lwp_simulate(const lwp_scenario* scenario, const lwp_plan* plan,
                        const lwp_gain_matrix* alpha, const lwp_traffic_config* traffic,
                        lwp_pdr_report** out) {
  LWP_REQUIRE(scenario);
  LWP_REQUIRE(plan);
  LWP_REQUIRE(alpha);
  LWP_REQUIRE(traffic);
  LWP_REQUIRE(out);
  return Guard([&] {
    *out = new lwp_pdr_report{
        lwplan::RunSimulation(scenario->rep, plan->rep.solution, alpha->rep, traffic->rep)};
  });
}

lwp_status lwp_pdr_report_load(const char* path, lwp_pdr_report** out) {
  LWP_REQUIRE(path);
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_pdr_report{lwplan::LoadPdrReport(path)}; });
}

lwp_status lwp_pdr_report_save(const lwp_pdr_report* report, const char* path) {
  LWP_REQUIRE(report);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::SavePdrReport(report->rep, path); });
}

double lwp_pdr_report_overall(const lwp_pdr_report* r) { return r ? r->rep.pdr_overall : NAN; }

size_t lwp_pdr_report_num_eds(const lwp_pdr_report* r) { return r ? r->rep.per_ed.size() : 0; }

lwp_status lwp_pdr_report_ed(const lwp_pdr_report* r, size_t d, size_t* sent, size_t* delivered) {
  LWP_REQUIRE(r);
  return Guard([&] {
    CheckIndex(d, r->rep.per_ed.size(), "device");
    if (sent) *sent = r->rep.per_ed[d - 1].sent;
    if (delivered) *delivered = r->rep.per_ed[d - 1].delivered;
  });
}

size_t lwp_pdr_report_collisions(const lwp_pdr_report* r) { return r ? r->rep.collisions : 0; }

size_t lwp_pdr_report_below_sensitivity(const lwp_pdr_report* r) {
  return r ? r->rep.below_sensitivity_drops : 0;
}

lwp_status lwp_avg_pdr(const lwp_pdr_report* const* reports, size_t n, double* out) {
  LWP_REQUIRE(out);
  if (n > 0) LWP_REQUIRE(reports);
  return Guard([&] {
    std::vector<lwplan::PdrReport> copies;
    for (size_t i = 0; i < n; ++i) {
      if (!reports[i]) lwplan::Fail(lwplan::ErrorCode::kValidation, "NULL report in list");
      copies.push_back(reports[i]->rep);
    }
    *out = lwplan::AvgPdr(copies);
  });
}

void lwp_pdr_report_free(lwp_pdr_report* r) { delete r; }

// reporting

lwp_status lwp_cdf(const double* values, size_t n, double* out_values, double* out_fractions,
                   size_t cap, size_t* count) {
  LWP_REQUIRE(count);
  if (n > 0) LWP_REQUIRE(values);
  if (cap > 0) {
    LWP_REQUIRE(out_values);
    LWP_REQUIRE(out_fractions);
  }
  return Guard([&] {
    auto cdf = lwplan::Cdf(std::span<const double>(values, n));
    *count = cdf.size();
    for (size_t i = 0; i < std::min(cap, cdf.size()); ++i) {
      out_values[i] = cdf[i].value;
      out_fractions[i] = cdf[i].fraction;
    }
  });
}

lwp_status lwp_cdf_save_csv(const double* values, size_t n, const char* path) {
  LWP_REQUIRE(path);
  if (n > 0) LWP_REQUIRE(values);
  return Guard([&] {
    auto cdf = lwplan::Cdf(std::span<const double>(values, n));
    lwplan::io::WriteFile(path, lwplan::CdfToCsv(cdf));
  });
}

lwp_status lwp_summary_new(lwp_summary** out) {
  LWP_REQUIRE(out);
  return Guard([&] { *out = new lwp_summary{}; });
}

lwp_status lwp_summary_add(lwp_summary* summary, const char* label, const lwp_plan* plan,
                           const lwp_gain_matrix* alpha, const lwp_pdr_report* pdr) {
  LWP_REQUIRE(summary);
  LWP_REQUIRE(plan);
  return Guard([&] {
    lwplan::SummaryRow row;
    row.channel = label && *label ? label : plan->rep.channel_source;
    if (row.channel.find_first_of(",\n") != std::string::npos) {
      lwplan::Fail(lwplan::ErrorCode::kValidation, "summary label must not contain ',' or newline");
    }
    row.objective = plan->rep.solution.objective;
    if (alpha && plan->rep.solution.feasible()) {
      row.avg_ed_best_power_dbm = lwplan::AvgEdBestPower(alpha->rep, plan->rep.solution);
    }
    if (pdr) row.avg_pdr = pdr->rep.pdr_overall;
    summary->rows.push_back(std::move(row));
  });
}

lwp_status lwp_summary_save_csv(const lwp_summary* summary, const char* path) {
  LWP_REQUIRE(summary);
  LWP_REQUIRE(path);
  return Guard([&] { lwplan::io::WriteFile(path, lwplan::SummaryToCsv(summary->rows)); });
}

void lwp_summary_free(lwp_summary* summary) { delete summary; }

}  // extern "C"
