/*
 * Copyright 2026 The lwplan Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * lwplan C API: LoRaWAN gateway placement planning.
 *
 * Conventions
 *  - Every fallible call returns lwp_status; LWP_OK is 0. On failure
 *    lwp_last_error() returns a message for the calling thread.
 *  - Objects are opaque handles created by *_load/_build/_new functions and
 *    released with the matching *_free. Freeing NULL is a no-op.
 *  - Candidate (p) and device (d) indices are one-based throughout.
 *  - Array getters take (buf, cap, count): *count receives the full length
 *    and min(cap, *count) elements are copied. buf may be NULL when cap is 0.
 */

#ifndef LWPLAN_LWPLAN_H
#define LWPLAN_LWPLAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LWP_BUILDING_LIBRARY)
#    define LWP_API __declspec(dllexport)
#  else
#    define LWP_API __declspec(dllimport)
#  endif
#else
#  define LWP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lwp_status {
  LWP_OK = 0,
  LWP_ERR_INVALID_ARGUMENT = 1,
  LWP_ERR_VALIDATION = 2,
  LWP_ERR_PARSE = 3,
  LWP_ERR_IO = 4,
  LWP_ERR_DOMAIN = 5,
  LWP_ERR_BOUNDS = 6,
  LWP_ERR_REFUSED = 7,
  LWP_ERR_INTERNAL = 8
} lwp_status;

typedef enum lwp_channel_model {
  LWP_MODEL_LOG_DISTANCE = 0,
  LWP_MODEL_OKUMURA_HATA = 1,
  LWP_MODEL_COST231 = 2,
  LWP_MODEL_UMA_3GPP = 3
} lwp_channel_model;

typedef enum lwp_environment {
  LWP_ENV_URBAN_SMALL_MEDIUM = 0,
  LWP_ENV_URBAN_LARGE = 1,
  LWP_ENV_SUBURBAN = 2
} lwp_environment;

typedef enum lwp_los_mode {
  LWP_LOS_ALWAYS = 0,
  LWP_LOS_NEVER = 1,
  LWP_LOS_PROBABILISTIC = 2
} lwp_los_mode;

typedef enum lwp_solver {
  LWP_SOLVER_EXACT = 0,
  LWP_SOLVER_GREEDY = 1,
  LWP_SOLVER_BRUTE_FORCE = 2
} lwp_solver;

typedef enum lwp_solve_status {
  LWP_SOLVE_OPTIMAL = 0,
  LWP_SOLVE_FEASIBLE_HEURISTIC = 1,
  LWP_SOLVE_INFEASIBLE = 2
} lwp_solve_status;

typedef struct lwp_scenario lwp_scenario;
typedef struct lwp_channel_config lwp_channel_config;
typedef struct lwp_gain_matrix lwp_gain_matrix;
typedef struct lwp_gain_map lwp_gain_map;
typedef struct lwp_coverage lwp_coverage;
typedef struct lwp_plan lwp_plan;
typedef struct lwp_sweep lwp_sweep;
typedef struct lwp_traffic_config lwp_traffic_config;
typedef struct lwp_pdr_report lwp_pdr_report;
typedef struct lwp_summary lwp_summary;

LWP_API const char* lwp_version(void);
LWP_API const char* lwp_last_error(void);
LWP_API const char* lwp_status_string(lwp_status status);

/* ---- scenario ---------------------------------------------------------- */

LWP_API lwp_status lwp_scenario_load(const char* path, lwp_scenario** out);
LWP_API lwp_status lwp_scenario_save(const lwp_scenario* scenario, const char* path);
/* 10x10 grid, 50 m spacing, 30 m gateways, 54 seeded devices at 1.4 m. */
LWP_API lwp_status lwp_scenario_replication_fixture(uint64_t seed, lwp_scenario** out);
/* ed_xyz holds n_eds packed (x, y, z) triples. */
LWP_API lwp_status lwp_scenario_build_grid(double origin_x, double origin_y, size_t nx, size_t ny,
                                           double spacing_m, double gw_height_m,
                                           const double* ed_xyz, size_t n_eds,
                                           lwp_scenario** out);
LWP_API size_t lwp_scenario_num_candidates(const lwp_scenario* scenario);
LWP_API size_t lwp_scenario_num_eds(const lwp_scenario* scenario);
LWP_API lwp_status lwp_scenario_candidate(const lwp_scenario* scenario, size_t p, double xyz[3]);
LWP_API lwp_status lwp_scenario_ed(const lwp_scenario* scenario, size_t d, double xyz[3]);
LWP_API void lwp_scenario_free(lwp_scenario* scenario);

LWP_API double lwp_distance_3d(const double a[3], const double b[3]);
LWP_API double lwp_distance_2d(const double a[3], const double b[3]);

/* ---- channel models ---------------------------------------------------- */

LWP_API lwp_status lwp_channel_config_default(lwp_channel_model model, lwp_channel_config** out);
/* JSON object; see ChannelConfig keys in the README. */
LWP_API lwp_status lwp_channel_config_from_json(const char* json, lwp_channel_config** out);
LWP_API const char* lwp_channel_config_model_name(const lwp_channel_config* cfg);
LWP_API void lwp_channel_config_free(lwp_channel_config* cfg);

LWP_API lwp_status lwp_free_space_pl(double d_m, double fc_hz, double* out_db);
/* ref_loss_db = NAN selects the free-space loss at d0. */
LWP_API lwp_status lwp_log_distance_pl(double d_m, double fc_hz, double exponent, double d0_m,
                                       double ref_loss_db, double* out_db);
LWP_API lwp_status lwp_okumura_hata_pl(double d2d_m, double fc_hz, double hb_m, double hm_m,
                                       lwp_environment env, double* out_db);
LWP_API lwp_status lwp_cost231_pl(double d2d_m, double fc_hz, double hb_m, double hm_m,
                                  lwp_environment env, double city_correction_db,
                                  double* out_db);
LWP_API lwp_status lwp_uma_pl(double d2d_m, double fc_hz, double h_bs_m, double h_ut_m,
                              lwp_los_mode mode, uint64_t seed, uint64_t link_key,
                              double* out_db);
LWP_API double lwp_received_power(double tx_power_dbm, double pl_db, double shadowing_db);

/* ---- received power matrix (alpha) ------------------------------------ */

LWP_API lwp_status lwp_alpha_build(const lwp_scenario* scenario, const lwp_channel_config* cfg,
                                   double tx_power_dbm, lwp_gain_matrix** out);
/* dir must hold gw_1.csv .. gw_P.csv (and optionally meta.json). */
LWP_API lwp_status lwp_alpha_from_rt_dir(const char* dir, const lwp_scenario* scenario,
                                         double tx_power_dbm, lwp_gain_matrix** out);
LWP_API lwp_status lwp_alpha_load_csv(const char* path, lwp_gain_matrix** out);
LWP_API lwp_status lwp_alpha_save_csv(const lwp_gain_matrix* alpha, const char* path);
LWP_API size_t lwp_alpha_num_eds(const lwp_gain_matrix* alpha);
LWP_API size_t lwp_alpha_num_candidates(const lwp_gain_matrix* alpha);
LWP_API lwp_status lwp_alpha_get(const lwp_gain_matrix* alpha, size_t d, size_t p, double* out);
LWP_API const char* lwp_alpha_source(const lwp_gain_matrix* alpha);
LWP_API size_t lwp_alpha_num_warnings(const lwp_gain_matrix* alpha);
LWP_API const char* lwp_alpha_warning(const lwp_gain_matrix* alpha, size_t i);
LWP_API void lwp_alpha_free(lwp_gain_matrix* alpha);

/* ---- ray-tracing coverage maps ---------------------------------------- */

LWP_API lwp_status lwp_gain_map_load(const char* path, size_t gw_index, lwp_gain_map** out);
LWP_API lwp_status lwp_gain_map_sample(const lwp_gain_map* map, double x_m, double y_m,
                                       double* out_db);
LWP_API void lwp_gain_map_free(lwp_gain_map* map);
/* Writes model-derived maps for every candidate on a device-aligned raster. */
LWP_API lwp_status lwp_rt_synthesize(const lwp_scenario* scenario, const lwp_channel_config* cfg,
                                     double cell_size_m, double rx_height_m, const char* dir,
                                     double perturbation_sigma_db, uint64_t seed);

/* ---- coverage (beta) --------------------------------------------------- */

LWP_API lwp_status lwp_coverage_threshold(const lwp_gain_matrix* alpha, double rho_dbm,
                                          lwp_coverage** out);
/* bits: row-major num_eds x num_candidates, nonzero = covered. */
LWP_API lwp_status lwp_coverage_from_bits(const uint8_t* bits, size_t num_eds,
                                          size_t num_candidates, double rho_dbm,
                                          lwp_coverage** out);
LWP_API int lwp_coverage_get(const lwp_coverage* cov, size_t d, size_t p);
LWP_API lwp_status lwp_coverage_uncovered(const lwp_coverage* cov, size_t* buf, size_t cap,
                                          size_t* count);
LWP_API void lwp_coverage_free(lwp_coverage* cov);

/* ---- placement --------------------------------------------------------- */

LWP_API lwp_status lwp_plan_solve(const lwp_coverage* cov, lwp_solver solver,
                                  const char* channel_source, lwp_plan** out);
LWP_API lwp_status lwp_plan_load(const char* path, lwp_plan** out);
LWP_API lwp_status lwp_plan_save(const lwp_plan* plan, const char* path, int include_runtime);
LWP_API lwp_solve_status lwp_plan_status(const lwp_plan* plan);
LWP_API size_t lwp_plan_objective(const lwp_plan* plan);
LWP_API double lwp_plan_rho(const lwp_plan* plan);
LWP_API const char* lwp_plan_channel_source(const lwp_plan* plan);
LWP_API uint64_t lwp_plan_nodes_explored(const lwp_plan* plan);
LWP_API lwp_status lwp_plan_selected(const lwp_plan* plan, size_t* buf, size_t cap,
                                     size_t* count);
LWP_API lwp_status lwp_plan_uncovered(const lwp_plan* plan, size_t* buf, size_t cap,
                                      size_t* count);
LWP_API lwp_status lwp_plan_avg_ed_best_power(const lwp_plan* plan, const lwp_gain_matrix* alpha,
                                              double* out_dbm);
LWP_API lwp_status lwp_plan_ed_best_powers(const lwp_plan* plan, const lwp_gain_matrix* alpha,
                                           double* buf, size_t cap, size_t* count);
LWP_API void lwp_plan_free(lwp_plan* plan);

LWP_API lwp_status lwp_rho_range(double start, double end, double step, double* buf, size_t cap,
                                 size_t* count);
LWP_API lwp_status lwp_sweep_run(const lwp_gain_matrix* alpha, const double* rhos, size_t n,
                                 lwp_solver solver, lwp_sweep** out);
LWP_API lwp_status lwp_sweep_save_csv(const lwp_sweep* sweep, const char* path);
LWP_API size_t lwp_sweep_size(const lwp_sweep* sweep);
/* avg_dbm receives NAN for infeasible entries; any out pointer may be NULL. */
LWP_API lwp_status lwp_sweep_entry(const lwp_sweep* sweep, size_t i, double* rho_dbm,
                                   lwp_solve_status* status, size_t* objective, double* avg_dbm);
LWP_API void lwp_sweep_free(lwp_sweep* sweep);

/* ---- LoRaWAN uplink simulation ---------------------------------------- */

/* "{}" yields the defaults (1000 packets, SF7, 125 kHz, 600 s, ...). */
LWP_API lwp_status lwp_traffic_config_from_json(const char* json, lwp_traffic_config** out);
LWP_API lwp_status lwp_traffic_time_on_air(const lwp_traffic_config* cfg, double* out_s);
LWP_API void lwp_traffic_config_free(lwp_traffic_config* cfg);
LWP_API lwp_status lwp_sensitivity(int sf, double bandwidth_hz, double* out_dbm);

LWP_API lwp_status lwp_simulate(const lwp_scenario* scenario, const lwp_plan* plan,
                                const lwp_gain_matrix* alpha, const lwp_traffic_config* traffic,
                                lwp_pdr_report** out);
LWP_API lwp_status lwp_pdr_report_load(const char* path, lwp_pdr_report** out);
LWP_API lwp_status lwp_pdr_report_save(const lwp_pdr_report* report, const char* path);
LWP_API double lwp_pdr_report_overall(const lwp_pdr_report* report);
LWP_API size_t lwp_pdr_report_num_eds(const lwp_pdr_report* report);
LWP_API lwp_status lwp_pdr_report_ed(const lwp_pdr_report* report, size_t d, size_t* sent,
                                     size_t* delivered);
LWP_API size_t lwp_pdr_report_collisions(const lwp_pdr_report* report);
LWP_API size_t lwp_pdr_report_below_sensitivity(const lwp_pdr_report* report);
LWP_API lwp_status lwp_avg_pdr(const lwp_pdr_report* const* reports, size_t n, double* out);
LWP_API void lwp_pdr_report_free(lwp_pdr_report* report);

/* ---- reporting --------------------------------------------------------- */

LWP_API lwp_status lwp_cdf(const double* values, size_t n, double* out_values,
                           double* out_fractions, size_t cap, size_t* count);
LWP_API lwp_status lwp_cdf_save_csv(const double* values, size_t n, const char* path);

LWP_API lwp_status lwp_summary_new(lwp_summary** out);
/* alpha and pdr may be NULL; the power column is empty without alpha. */
LWP_API lwp_status lwp_summary_add(lwp_summary* summary, const char* label, const lwp_plan* plan,
                                   const lwp_gain_matrix* alpha, const lwp_pdr_report* pdr);
LWP_API lwp_status lwp_summary_save_csv(const lwp_summary* summary, const char* path);
LWP_API void lwp_summary_free(lwp_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* LWPLAN_LWPLAN_H */
