// Copyright 2026 The choreokit Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace choreokit {

// Broad failure classes. The CLI maps each to a stable exit code.
enum class ErrorKind {
  kInvalidInput,
  kInfeasible,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error InvalidInput(const std::string& message) {
  return Error(ErrorKind::kInvalidInput, message);
}

inline Error Infeasible(const std::string& message) {
  return Error(ErrorKind::kInfeasible, message);
}

inline Error Internal(const std::string& message) {
  return Error(ErrorKind::kInternal, message);
}

}  // namespace choreokit
