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

#ifndef LWPLAN_COVERAGE_HPP
#define LWPLAN_COVERAGE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lwplan/channel_models.hpp"
#include "lwplan/scenario.hpp"

namespace lwplan {

// Received power alpha in dBm, D rows (devices) by P columns (candidates).
// Entries are finite or -inf ("never covered").
class GainMatrix {
 public:
  GainMatrix() = default;
  GainMatrix(std::size_t num_eds, std::size_t num_candidates, double fill = 0.0)
      : rows_(num_eds), cols_(num_candidates), data_(num_eds * num_candidates, fill) {}

  std::size_t num_eds() const { return rows_; }
  std::size_t num_candidates() const { return cols_; }

  // Zero-based indices.
  double at(std::size_t d, std::size_t p) const { return data_[d * cols_ + p]; }
  double& at(std::size_t d, std::size_t p) { return data_[d * cols_ + p]; }

  const std::vector<double>& values() const { return data_; }

  double tx_power_dbm = 0.0;
  std::string source;                 // channel model name or rt directory
  std::vector<std::string> warnings;  // distinct model validity notes

  friend bool operator==(const GainMatrix& a, const GainMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class CoverageMatrix {
 public:
  CoverageMatrix() = default;
  CoverageMatrix(std::size_t num_eds, std::size_t num_candidates, double rho_dbm)
      : rho_dbm_(rho_dbm), rows_(num_eds), cols_(num_candidates), bits_(num_eds * num_candidates) {}

  std::size_t num_eds() const { return rows_; }
  std::size_t num_candidates() const { return cols_; }
  double rho_dbm() const { return rho_dbm_; }

  bool covers(std::size_t d, std::size_t p) const { return bits_[d * cols_ + p] != 0; }
  void set(std::size_t d, std::size_t p, bool value) { bits_[d * cols_ + p] = value ? 1 : 0; }

  friend bool operator==(const CoverageMatrix&, const CoverageMatrix&) = default;

 private:
  double rho_dbm_ = 0.0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

GainMatrix BuildAlpha(const Scenario& scenario, const ChannelConfig& cfg, double tx_power_dbm);

// beta[d][p] = 1 iff alpha[d][p] >= rho (inclusive).
CoverageMatrix Threshold(const GainMatrix& alpha, double rho_dbm);

// One-based indices of devices with no covering candidate.
std::vector<std::size_t> UncoveredEds(const CoverageMatrix& beta);

// CSV with header `ed_index,p_1,...,p_P`, one row per device, `-inf` for
// the sentinel.
std::string AlphaToCsv(const GainMatrix& alpha);
GainMatrix ParseAlphaCsv(const std::string& text, const std::string& source = "csv");
void SaveAlphaCsv(const GainMatrix& alpha, const std::filesystem::path& path);
GainMatrix LoadAlphaCsv(const std::filesystem::path& path);

}  // namespace lwplan

#endif  // LWPLAN_COVERAGE_HPP
