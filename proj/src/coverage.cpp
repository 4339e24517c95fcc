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

#include "lwplan/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "lwplan/error.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

GainMatrix BuildAlpha(const Scenario& scenario, const ChannelConfig& cfg, double tx_power_dbm) {
  ValidateScenario(scenario);
  ValidateChannelConfig(cfg);
  if (!std::isfinite(tx_power_dbm)) Fail(ErrorCode::kValidation, "tx_power_dbm must be finite");

  GainMatrix alpha(scenario.num_eds(), scenario.num_candidates());
  alpha.tx_power_dbm = tx_power_dbm;
  alpha.source = std::string(ToString(cfg.model));
  for (std::size_t d = 0; d < scenario.num_eds(); ++d) {
    const auto& ed = scenario.eds[d];
    for (std::size_t p = 0; p < scenario.num_candidates(); ++p) {
      const auto& gw = scenario.gw_candidates[p];
      double pl = LinkPathLoss(cfg, ed, gw, d, p);
      alpha.at(d, p) = ReceivedPower(tx_power_dbm, pl, ShadowingDraw(cfg, d, p));
      for (auto& w : ValidityWarnings(cfg, ed, gw)) {
        if (std::find(alpha.warnings.begin(), alpha.warnings.end(), w) == alpha.warnings.end()) {
          alpha.warnings.push_back(std::move(w));
        }
      }
    }
  }
  return alpha;
}

CoverageMatrix Threshold(const GainMatrix& alpha, double rho_dbm) {
  CoverageMatrix beta(alpha.num_eds(), alpha.num_candidates(), rho_dbm);
  for (std::size_t d = 0; d < alpha.num_eds(); ++d) {
    for (std::size_t p = 0; p < alpha.num_candidates(); ++p) {
      beta.set(d, p, alpha.at(d, p) >= rho_dbm);
    }
  }
  return beta;
}

std::vector<std::size_t> UncoveredEds(const CoverageMatrix& beta) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < beta.num_eds(); ++d) {
    bool any = false;
    for (std::size_t p = 0; p < beta.num_candidates() && !any; ++p) any = beta.covers(d, p);
    if (!any) out.push_back(d + 1);
  }
  return out;
}

std::string AlphaToCsv(const GainMatrix& alpha) {
  std::string out = "ed_index";
  for (std::size_t p = 0; p < alpha.num_candidates(); ++p) out += ",p_" + std::to_string(p + 1);
  out += '\n';
  for (std::size_t d = 0; d < alpha.num_eds(); ++d) {
    out += std::to_string(d + 1);
    for (std::size_t p = 0; p < alpha.num_candidates(); ++p) {
      out += ',';
      out += io::FormatDouble(alpha.at(d, p));
    }
    out += '\n';
  }
  return out;
}

GainMatrix ParseAlphaCsv(const std::string& text, const std::string& source) {
  auto lines = io::SplitLines(text);
  if (lines.empty()) Fail(ErrorCode::kParse, "alpha csv: empty file");
  auto header = io::SplitCsvLine(lines[0]);
  if (header.size() < 2 || header[0] != "ed_index") {
    Fail(ErrorCode::kParse, "alpha csv: header must be 'ed_index,p_1,...,p_P'");
  }
  for (std::size_t p = 1; p < header.size(); ++p) {
    if (header[p] != "p_" + std::to_string(p)) {
      Fail(ErrorCode::kParse, "alpha csv: header column " + std::to_string(p + 1) +
                                  " must be 'p_" + std::to_string(p) + "'");
    }
  }
  std::size_t cols = header.size() - 1;
  std::vector<std::string_view> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) rows.push_back(lines[i]);
  }
  if (rows.empty()) Fail(ErrorCode::kParse, "alpha csv: no device rows");

  GainMatrix alpha(rows.size(), cols);
  alpha.source = source;
  for (std::size_t d = 0; d < rows.size(); ++d) {
    std::string where = "alpha csv row " + std::to_string(d + 2);
    auto fields = io::SplitCsvLine(rows[d]);
    if (fields.size() != cols + 1) Fail(ErrorCode::kParse, where + ": wrong number of fields");
    if (fields[0] != std::to_string(d + 1)) {
      Fail(ErrorCode::kParse, where + ": expected ed_index " + std::to_string(d + 1));
    }
    for (std::size_t p = 0; p < cols; ++p) {
      double v = io::ParseDouble(fields[p + 1], where);
      if (v == INFINITY) Fail(ErrorCode::kParse, where + ": +inf is not a valid power");
      alpha.at(d, p) = v;
    }
  }
  return alpha;
}

void SaveAlphaCsv(const GainMatrix& alpha, const std::filesystem::path& path) {
  io::WriteFile(path, AlphaToCsv(alpha));
}

GainMatrix LoadAlphaCsv(const std::filesystem::path& path) {
  return ParseAlphaCsv(io::ReadFile(path), path.string());
}

}  // namespace lwplan
