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

#ifndef LWPLAN_REPORT_HPP
#define LWPLAN_REPORT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lwplan {

struct CdfPoint {
  double value;
  double fraction;  // share of samples <= value

  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// Empirical CDF with one point per distinct value, ascending.
std::vector<CdfPoint> Cdf(std::span<const double> values);

// `value_dbm,fraction`
std::string CdfToCsv(std::span<const CdfPoint> cdf);

struct SummaryRow {
  std::string channel;
  std::size_t objective = 0;
  std::optional<double> avg_ed_best_power_dbm;
  std::optional<double> avg_pdr;
};

// `channel,objective,avg_ed_best_power_dbm,avg_pdr`; missing values are
// left empty.
std::string SummaryToCsv(std::span<const SummaryRow> rows);

}  // namespace lwplan

#endif  // LWPLAN_REPORT_HPP
