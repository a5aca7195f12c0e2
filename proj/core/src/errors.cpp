// Copyright 2026 The qecdecay Authors
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

#include "qecdecay/errors.hpp"

namespace qecd {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::normalization: return "normalization error";
    case ErrorCode::invalid_gate: return "invalid gate";
    case ErrorCode::covariance: return "covariance error";
    case ErrorCode::parameter: return "parameter error";
    case ErrorCode::config: return "config error";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::alignment: return "alignment error";
    case ErrorCode::precondition: return "precondition error";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace qecd
