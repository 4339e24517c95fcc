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

#ifndef LWPLAN_PLACEMENT_HPP
#define LWPLAN_PLACEMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lwplan/coverage.hpp"

namespace lwplan {

enum class SolveStatus { kOptimal, kFeasibleHeuristic, kInfeasible };
enum class Solver { kExact, kGreedy, kBruteForce };

std::string_view ToString(SolveStatus status);
SolveStatus ParseSolveStatus(std::string_view name);
std::string_view ToString(Solver solver);
Solver ParseSolver(std::string_view name);

struct SolveStats {
  std::uint64_t nodes_explored = 0;
  double runtime_s = 0.0;
};

struct PlacementSolution {
  std::vector<std::size_t> selected;   // one-based candidate indices, ascending
  std::size_t objective = 0;           // == selected.size()
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<std::size_t> uncovered;  // one-based device indices when infeasible
  SolveStats stats;

  bool feasible() const { return status != SolveStatus::kInfeasible; }
};

// Minimum-cardinality cover by branch and bound. Among optimal covers the
// lexicographically smallest index set is returned.
PlacementSolution SolveExact(const CoverageMatrix& beta);

// Repeatedly takes the candidate covering the most uncovered devices,
// lowest index on ties.
PlacementSolution SolveGreedy(const CoverageMatrix& beta);

inline constexpr std::size_t kBruteForceMaxCandidates = 24;

// Exhaustive search over subsets in (size, lexicographic) order. Refuses
// instances with more than kBruteForceMaxCandidates candidates.
PlacementSolution BruteForce(const CoverageMatrix& beta);

PlacementSolution Solve(const CoverageMatrix& beta, Solver solver);

// True when every device row has a 1 in some selected column.
bool IsCover(const CoverageMatrix& beta, std::span<const std::size_t> selected);

// Per-device best received power over the selected gateways.
std::vector<double> EdBestPowers(const GainMatrix& alpha, const PlacementSolution& solution);

// Mean over devices of the best received power among selected gateways.
double AvgEdBestPower(const GainMatrix& alpha, const PlacementSolution& solution);

struct SweepEntry {
  double rho_dbm = 0.0;
  PlacementSolution solution;
  std::optional<double> avg_ed_best_power_dbm;  // set when feasible
};

struct SweepReport {
  std::vector<SweepEntry> entries;  // ascending rho
};

SweepReport SweepRho(const GainMatrix& alpha, std::span<const double> rho_list, Solver solver);

// start, start + step, ... up to and including end (within 1e-9 * step).
std::vector<double> RhoRange(double start, double end, double step);

// CSV `rho_dbm,status,objective,selected`; selected is ';'-joined and both
// objective and selected are empty for infeasible rows.
std::string SweepToCsv(const SweepReport& report);

// Solution of one thresholded run as stored in a plan file.
struct Plan {
  double rho_dbm = 0.0;
  std::string channel_source;
  PlacementSolution solution;
};

// Runtime is only written when `include_runtime` is set so that repeated
// runs produce identical files.
std::string PlanToJson(const Plan& plan, bool include_runtime = false);
Plan ParsePlanJson(const std::string& text);
void SavePlan(const Plan& plan, const std::filesystem::path& path, bool include_runtime = false);
Plan LoadPlan(const std::filesystem::path& path);

}  // namespace lwplan

#endif  // LWPLAN_PLACEMENT_HPP
