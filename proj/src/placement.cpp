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

#include "lwplan/placement.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "lwplan/error.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

using nlohmann::json;

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleHeuristic: return "feasible_heuristic";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

SolveStatus ParseSolveStatus(std::string_view name) {
  for (auto s : {SolveStatus::kOptimal, SolveStatus::kFeasibleHeuristic, SolveStatus::kInfeasible}) {
    if (ToString(s) == name) return s;
  }
  Fail(ErrorCode::kParse, "unknown status '" + std::string(name) + "'");
}

std::string_view ToString(Solver solver) {
  switch (solver) {
    case Solver::kExact: return "exact";
    case Solver::kGreedy: return "greedy";
    case Solver::kBruteForce: return "brute_force";
  }
  return "?";
}

Solver ParseSolver(std::string_view name) {
  for (auto s : {Solver::kExact, Solver::kGreedy, Solver::kBruteForce}) {
    if (ToString(s) == name) return s;
  }
  Fail(ErrorCode::kValidation,
       "unknown solver '" + std::string(name) + "' (expected exact or greedy)");
}

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void set_all() {
    std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
    if (n_ % 64) w_.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](auto w) { return w == 0; });
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      c += static_cast<std::size_t>(std::popcount(w_[k] & o.w_[k]));
    }
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] & o.w_[k]) return true;
    }
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] & ~o.w_[k]) return false;
    }
    return true;
  }
  void and_not(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  }
  void or_with(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      auto w = w_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

void CheckShape(const CoverageMatrix& beta) {
  if (beta.num_eds() == 0 || beta.num_candidates() == 0) {
    Fail(ErrorCode::kValidation, "coverage matrix must be at least 1x1");
  }
}

std::vector<Bits> ColumnCovers(const CoverageMatrix& beta) {
  std::vector<Bits> cols(beta.num_candidates(), Bits(beta.num_eds()));
  for (std::size_t d = 0; d < beta.num_eds(); ++d) {
    for (std::size_t p = 0; p < beta.num_candidates(); ++p) {
      if (beta.covers(d, p)) cols[p].set(d);
    }
  }
  return cols;
}

PlacementSolution InfeasibleSolution(std::vector<std::size_t> uncovered) {
  PlacementSolution s;
  s.status = SolveStatus::kInfeasible;
  s.uncovered = std::move(uncovered);
  return s;
}

double SecondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Reduced set-cover instance. Columns keep ascending original order, so
// lexicographic order over reduced indices matches the original indices.
struct Instance {
  std::size_t rows = 0;
  std::vector<std::size_t> col_ids;   // reduced column -> original zero-based index
  std::vector<Bits> col_cover;        // over reduced rows
  std::vector<Bits> row_coverers;     // over reduced columns
  std::vector<std::size_t> row_order; // rows by ascending coverer count
};

Instance Presolve(const CoverageMatrix& beta) {
  auto covers = ColumnCovers(beta);
  const std::size_t n_cols = beta.num_candidates();

  // A column contained in the cover of a lower-indexed column can be swapped
  // for it in any optimum without losing coverage or lexicographic rank.
  std::vector<std::size_t> keep_cols;
  for (std::size_t q = 0; q < n_cols; ++q) {
    if (covers[q].none()) continue;
    bool dominated = false;
    for (std::size_t p : keep_cols) {
      if (covers[q].subset_of(covers[p])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep_cols.push_back(q);
  }

  // Row coverers over the kept columns; a row whose coverers include all
  // coverers of another row is implied by it.
  const std::size_t n_rows = beta.num_eds();
  std::vector<Bits> coverers(n_rows, Bits(keep_cols.size()));
  for (std::size_t d = 0; d < n_rows; ++d) {
    for (std::size_t j = 0; j < keep_cols.size(); ++j) {
      if (covers[keep_cols[j]].test(d)) coverers[d].set(j);
    }
  }
  std::vector<std::size_t> keep_rows;
  for (std::size_t b = 0; b < n_rows; ++b) {
    bool implied = false;
    for (std::size_t a = 0; a < n_rows && !implied; ++a) {
      if (a == b || !coverers[a].subset_of(coverers[b])) continue;
      // Equal sets: keep the lowest index only.
      implied = !(coverers[a] == coverers[b]) || a < b;
    }
    if (!implied) keep_rows.push_back(b);
  }

  Instance inst;
  inst.rows = keep_rows.size();
  for (auto c : keep_cols) inst.col_ids.push_back(c);
  inst.col_cover.assign(keep_cols.size(), Bits(inst.rows));
  inst.row_coverers.reserve(inst.rows);
  for (std::size_t r = 0; r < keep_rows.size(); ++r) {
    inst.row_coverers.push_back(coverers[keep_rows[r]]);
    coverers[keep_rows[r]].for_each([&](std::size_t j) { inst.col_cover[j].set(r); });
  }
  inst.row_order.resize(inst.rows);
  std::iota(inst.row_order.begin(), inst.row_order.end(), 0);
  std::stable_sort(inst.row_order.begin(), inst.row_order.end(), [&](auto a, auto b) {
    return inst.row_coverers[a].count() < inst.row_coverers[b].count();
  });
  return inst;
}

class CoverSearch {
 public:
  explicit CoverSearch(const Instance& inst) : inst_(inst) {}

  // Looks for a cover of `uncovered` from `allowed` with fewer than `limit`
  // columns. With `first_only` the search stops at the first such cover,
  // otherwise it keeps improving until optimality is proven.
  std::optional<std::vector<std::size_t>> Run(const Bits& uncovered, const Bits& allowed,
                                               std::size_t limit, bool first_only) {
    best_.reset();
    best_size_ = limit;
    first_only_ = first_only;
    stop_ = false;
    chosen_.clear();
    Dfs(uncovered, allowed);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::size_t LowerBound(const Bits& uncovered, const Bits& allowed) const {
    std::size_t max_gain = 0;
    allowed.for_each([&](std::size_t c) {
      max_gain = std::max(max_gain, inst_.col_cover[c].count_and(uncovered));
    });
    if (max_gain == 0) return std::numeric_limits<std::size_t>::max();
    std::size_t n = uncovered.count();
    std::size_t by_size = (n + max_gain - 1) / max_gain;

    // Rows with pairwise disjoint coverer sets each need their own column.
    std::size_t packing = 0;
    Bits used(inst_.col_ids.size());
    for (auto r : inst_.row_order) {
      if (!uncovered.test(r)) continue;
      Bits cov = inst_.row_coverers[r] & allowed;
      if (cov.intersects(used)) continue;
      ++packing;
      used.or_with(cov);
    }
    return std::max(by_size, packing);
  }

  void Dfs(const Bits& uncovered, Bits allowed) {
    ++nodes_;
    const std::size_t depth = chosen_.size();
    if (uncovered.none()) {
      if (depth < best_size_) {
        best_size_ = depth;
        best_ = chosen_;
        if (first_only_) stop_ = true;
      }
      return;
    }
    auto lb = LowerBound(uncovered, allowed);
    if (lb == std::numeric_limits<std::size_t>::max() || depth + lb >= best_size_) return;

    // Branch on the uncovered row with the fewest allowed coverers.
    std::size_t branch_row = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (auto r : inst_.row_order) {
      if (!uncovered.test(r)) continue;
      auto k = inst_.row_coverers[r].count_and(allowed);
      if (k < fewest) {
        fewest = k;
        branch_row = r;
        if (k <= 1) break;
      }
    }
    if (fewest == 0) return;

    std::vector<std::pair<std::size_t, std::size_t>> options;  // (gain, column)
    (inst_.row_coverers[branch_row] & allowed).for_each([&](std::size_t c) {
      options.emplace_back(inst_.col_cover[c].count_and(uncovered), c);
    });
    std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    for (const auto& [gain, c] : options) {
      Bits next = uncovered;
      next.and_not(inst_.col_cover[c]);
      chosen_.push_back(c);
      allowed.reset(c);
      Dfs(next, allowed);
      chosen_.pop_back();
      // c stays excluded for later siblings: covers containing it were
      // explored in this branch.
      if (stop_) return;
    }
  }

  const Instance& inst_;
  std::optional<std::vector<std::size_t>> best_;
  std::size_t best_size_ = 0;
  bool first_only_ = false;
  bool stop_ = false;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

std::vector<std::size_t> GreedyColumns(const std::vector<Bits>& covers, Bits uncovered) {
  std::vector<std::size_t> picked;
  while (!uncovered.none()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < covers.size(); ++c) {
      auto g = covers[c].count_and(uncovered);
      if (g > best_gain) {
        best_gain = g;
        best = c;
      }
    }
    if (best_gain == 0) break;
    picked.push_back(best);
    uncovered.and_not(covers[best]);
  }
  return picked;
}

}  // namespace

PlacementSolution SolveExact(const CoverageMatrix& beta) {
  CheckShape(beta);
  auto t0 = std::chrono::steady_clock::now();
  auto uncovered = UncoveredEds(beta);
  if (!uncovered.empty()) {
    auto s = InfeasibleSolution(std::move(uncovered));
    s.stats.runtime_s = SecondsSince(t0);
    return s;
  }

  Instance inst = Presolve(beta);
  Bits all_rows(inst.rows);
  all_rows.set_all();
  Bits all_cols(inst.col_ids.size());
  all_cols.set_all();

  // Phase 1: optimum value, seeded with the greedy cover as incumbent.
  auto incumbent = GreedyColumns(inst.col_cover, all_rows);
  CoverSearch search(inst);
  auto better = search.Run(all_rows, all_cols, incumbent.size(), /*first_only=*/false);
  const std::size_t k = better ? better->size() : incumbent.size();

  // Phase 2: fix columns in ascending order, keeping each one only if the
  // remaining rows can still be covered by k - slot - 1 higher columns.
  std::vector<std::size_t> chosen;
  Bits rows = all_rows;
  std::size_t next_col = 0;
  const std::size_t n_cols = inst.col_ids.size();
  for (std::size_t slot = 0; slot < k && !rows.none(); ++slot) {
    const std::size_t remaining = k - slot - 1;
    bool placed = false;
    for (std::size_t c = next_col; c < n_cols && !placed; ++c) {
      if (!inst.col_cover[c].intersects(rows)) continue;
      Bits rest = rows;
      rest.and_not(inst.col_cover[c]);
      bool ok = rest.none();
      if (!ok && remaining > 0) {
        Bits allowed(n_cols);
        for (std::size_t j = c + 1; j < n_cols; ++j) allowed.set(j);
        ok = search.Run(rest, allowed, remaining + 1, /*first_only=*/true).has_value();
      }
      if (ok) {
        chosen.push_back(c);
        rows = rest;
        next_col = c + 1;
        placed = true;
      }
    }
    if (!placed) Fail(ErrorCode::kValidation, "internal: lexicographic phase lost feasibility");
  }

  PlacementSolution s;
  s.status = SolveStatus::kOptimal;
  for (auto c : chosen) s.selected.push_back(inst.col_ids[c] + 1);
  s.objective = s.selected.size();
  s.stats.nodes_explored = search.nodes();
  s.stats.runtime_s = SecondsSince(t0);
  return s;
}

PlacementSolution SolveGreedy(const CoverageMatrix& beta) {
  CheckShape(beta);
  auto t0 = std::chrono::steady_clock::now();
  auto uncovered = UncoveredEds(beta);
  if (!uncovered.empty()) {
    auto s = InfeasibleSolution(std::move(uncovered));
    s.stats.runtime_s = SecondsSince(t0);
    return s;
  }
  Bits rows(beta.num_eds());
  rows.set_all();
  auto picked = GreedyColumns(ColumnCovers(beta), rows);
  PlacementSolution s;
  s.status = SolveStatus::kFeasibleHeuristic;
  for (auto c : picked) s.selected.push_back(c + 1);
  std::sort(s.selected.begin(), s.selected.end());
  s.objective = s.selected.size();
  s.stats.nodes_explored = picked.size();
  s.stats.runtime_s = SecondsSince(t0);
  return s;
}

PlacementSolution BruteForce(const CoverageMatrix& beta) {
  CheckShape(beta);
  const std::size_t n = beta.num_candidates();
  if (n > kBruteForceMaxCandidates) {
    Fail(ErrorCode::kRefused, "brute force refuses P = " + std::to_string(n) + " > " +
                                  std::to_string(kBruteForceMaxCandidates));
  }
  auto t0 = std::chrono::steady_clock::now();
  auto uncovered = UncoveredEds(beta);
  if (!uncovered.empty()) return InfeasibleSolution(std::move(uncovered));

  auto covers = ColumnCovers(beta);
  PlacementSolution s;
  for (std::size_t k = 1; k <= n; ++k) {
    // Combinations of size k in lexicographic order.
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      ++s.stats.nodes_explored;
      Bits rows(beta.num_eds());
      for (auto c : comb) rows.or_with(covers[c]);
      if (rows.count() == beta.num_eds()) {
        s.status = SolveStatus::kOptimal;
        for (auto c : comb) s.selected.push_back(c + 1);
        s.objective = k;
        s.stats.runtime_s = SecondsSince(t0);
        return s;
      }
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  Fail(ErrorCode::kValidation, "internal: feasible instance without a cover");
}

PlacementSolution Solve(const CoverageMatrix& beta, Solver solver) {
  switch (solver) {
    case Solver::kExact: return SolveExact(beta);
    case Solver::kGreedy: return SolveGreedy(beta);
    case Solver::kBruteForce: return BruteForce(beta);
  }
  Fail(ErrorCode::kValidation, "invalid solver");
}

bool IsCover(const CoverageMatrix& beta, std::span<const std::size_t> selected) {
  for (std::size_t d = 0; d < beta.num_eds(); ++d) {
    bool any = false;
    for (auto p : selected) {
      if (p >= 1 && p <= beta.num_candidates() && beta.covers(d, p - 1)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

std::vector<double> EdBestPowers(const GainMatrix& alpha, const PlacementSolution& solution) {
  if (!solution.feasible() || solution.selected.empty()) {
    Fail(ErrorCode::kValidation, "received power needs a feasible placement");
  }
  std::vector<double> best(alpha.num_eds(), -INFINITY);
  for (auto p : solution.selected) {
    if (p < 1 || p > alpha.num_candidates()) {
      Fail(ErrorCode::kValidation, "selected candidate " + std::to_string(p) + " out of range");
    }
    for (std::size_t d = 0; d < alpha.num_eds(); ++d) {
      best[d] = std::max(best[d], alpha.at(d, p - 1));
    }
  }
  return best;
}

double AvgEdBestPower(const GainMatrix& alpha, const PlacementSolution& solution) {
  auto best = EdBestPowers(alpha, solution);
  double sum = 0.0;
  for (double v : best) sum += v;
  return sum / static_cast<double>(best.size());
}

SweepReport SweepRho(const GainMatrix& alpha, std::span<const double> rho_list, Solver solver) {
  if (rho_list.empty()) Fail(ErrorCode::kValidation, "rho list must be non-empty");
  std::vector<double> rhos(rho_list.begin(), rho_list.end());
  std::sort(rhos.begin(), rhos.end());
  SweepReport report;
  for (double rho : rhos) {
    SweepEntry e;
    e.rho_dbm = rho;
    e.solution = Solve(Threshold(alpha, rho), solver);
    if (e.solution.feasible()) e.avg_ed_best_power_dbm = AvgEdBestPower(alpha, e.solution);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<double> RhoRange(double start, double end, double step) {
  if (!(step > 0.0)) Fail(ErrorCode::kValidation, "rho step must be > 0");
  if (!(start <= end)) Fail(ErrorCode::kValidation, "rho start must be <= rho end");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > end + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

std::string SweepToCsv(const SweepReport& report) {
  std::string out = "rho_dbm,status,objective,selected\n";
  for (const auto& e : report.entries) {
    out += io::FormatDouble(e.rho_dbm);
    out += ',';
    out += ToString(e.solution.status);
    out += ',';
    if (e.solution.feasible()) {
      out += std::to_string(e.solution.objective);
      out += ',';
      for (std::size_t i = 0; i < e.solution.selected.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(e.solution.selected[i]);
      }
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

std::string PlanToJson(const Plan& plan, bool include_runtime) {
  const auto& s = plan.solution;
  json stats = {{"nodes_explored", s.stats.nodes_explored}};
  if (include_runtime) stats["runtime_s"] = s.stats.runtime_s;
  json j = {{"rho_dbm", plan.rho_dbm},
            {"channel_source", plan.channel_source},
            {"selected", s.selected},
            {"objective", s.objective},
            {"status", ToString(s.status)},
            {"uncovered", s.uncovered},
            {"stats", stats}};
  return j.dump(2) + "\n";
}

Plan ParsePlanJson(const std::string& text) {
  Plan plan;
  try {
    auto j = json::parse(text);
    plan.rho_dbm = j.at("rho_dbm").get<double>();
    plan.channel_source = j.at("channel_source").get<std::string>();
    auto& s = plan.solution;
    s.selected = j.at("selected").get<std::vector<std::size_t>>();
    s.objective = j.at("objective").get<std::size_t>();
    s.status = ParseSolveStatus(j.at("status").get<std::string>());
    s.uncovered = j.at("uncovered").get<std::vector<std::size_t>>();
    if (j.contains("stats")) {
      const auto& st = j["stats"];
      if (st.contains("nodes_explored")) s.stats.nodes_explored = st["nodes_explored"].get<std::uint64_t>();
      if (st.contains("runtime_s")) s.stats.runtime_s = st["runtime_s"].get<double>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("plan: ") + e.what());
  }
  const auto& s = plan.solution;
  if (s.objective != s.selected.size()) {
    Fail(ErrorCode::kParse, "plan: objective does not match the selected list");
  }
  if (!std::is_sorted(s.selected.begin(), s.selected.end())) {
    Fail(ErrorCode::kParse, "plan: selected must be ascending");
  }
  return plan;
}

void SavePlan(const Plan& plan, const std::filesystem::path& path, bool include_runtime) {
  io::WriteFile(path, PlanToJson(plan, include_runtime));
}

Plan LoadPlan(const std::filesystem::path& path) { return ParsePlanJson(io::ReadFile(path)); }

}  // namespace lwplan
