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

#ifndef LWPLAN_ERROR_HPP
#define LWPLAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lwplan {

enum class ErrorCode {
  kValidation,
  kParse,
  kIo,
  kDomain,
  kBounds,
  kRefused,
};

// Single exception type for the core; the C layer maps `code()` onto
// lwp_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

}  // namespace lwplan

#endif  // LWPLAN_ERROR_HPP
