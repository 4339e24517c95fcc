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

#include "lwplan/report.hpp"

#include <algorithm>
#include <cmath>

#include "lwplan/error.hpp"
#include "lwplan/text_io.hpp"

namespace lwplan {

std::vector<CdfPoint> Cdf(std::span<const double> values) {
  if (values.empty()) Fail(ErrorCode::kValidation, "CDF of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); })) {
    Fail(ErrorCode::kValidation, "CDF input contains NaN");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CdfPoint> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

std::string CdfToCsv(std::span<const CdfPoint> cdf) {
  std::string out = "value_dbm,fraction\n";
  for (const auto& pt : cdf) {
    out += io::FormatDouble(pt.value) + ',' + io::FormatDouble(pt.fraction) + '\n';
  }
  return out;
}

std::string SummaryToCsv(std::span<const SummaryRow> rows) {
  std::string out = "channel,objective,avg_ed_best_power_dbm,avg_pdr\n";
  for (const auto& r : rows) {
    out += r.channel + ',' + std::to_string(r.objective) + ',';
    if (r.avg_ed_best_power_dbm) out += io::FormatDouble(*r.avg_ed_best_power_dbm);
    out += ',';
    if (r.avg_pdr) out += io::FormatDouble(*r.avg_pdr);
    out += '\n';
  }
  return out;
}

}  // namespace lwplan
