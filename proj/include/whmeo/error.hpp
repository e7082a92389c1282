// Copyright 2026 The whmeo Authors
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

namespace whmeo {

enum class ErrorKind {
  not_square,
  not_hermitian,
  not_unitary,
  dim_mismatch,
  dimension_too_large,
  invalid_exponent,
  invalid_state,
  invalid_argument,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::not_square: return "NotSquare";
    case ErrorKind::not_hermitian: return "NotHermitian";
    case ErrorKind::not_unitary: return "NotUnitary";
    case ErrorKind::dim_mismatch: return "DimMismatch";
    case ErrorKind::dimension_too_large: return "DimensionTooLarge";
    case ErrorKind::invalid_exponent: return "InvalidExponent";
    case ErrorKind::invalid_state: return "InvalidState";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every precondition failure in the library is reported as an Error carrying
/// its kind, so callers (and tests) can branch on the category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace whmeo
