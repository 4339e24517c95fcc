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

#ifndef LWPLAN_TEXT_IO_HPP
#define LWPLAN_TEXT_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lwplan::io {

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Shortest decimal form that round-trips to the same double. -inf/inf are
// written as "-inf"/"inf".
std::string FormatDouble(double value);

// Accepts decimal and exponent forms plus "inf", "-inf". Throws a parse
// error on anything else (including trailing garbage and NaN).
double ParseDouble(std::string_view text, std::string_view context);

std::vector<std::string_view> SplitCsvLine(std::string_view line);

// Splits on '\n', strips a trailing '\r', drops a final empty line.
std::vector<std::string_view> SplitLines(std::string_view text);

}  // namespace lwplan::io

#endif  // LWPLAN_TEXT_IO_HPP
