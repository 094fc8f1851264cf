// Copyright 2026 The mlab Authors.
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

#ifndef MLAB_ERRORS_HPP_
#define MLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mlab {

enum class ErrorKind {
  kInsufficientPrecision,
  kDimensionMismatch,
  kResourceBudgetExceeded,
  kEmptyVariety,
  kCommonZeroViolation,
  kAtlasInconsistency,
  kValidationFailure,
  kSamplingFailed,
  kGridTooCoarse,
  kParseError,
  kInvalidArgument,
};

const char* ErrorKindName(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorKind::kEmptyVariety: return "EmptyVariety";
    case ErrorKind::kCommonZeroViolation: return "CommonZeroViolation";
    case ErrorKind::kAtlasInconsistency: return "AtlasInconsistency";
    case ErrorKind::kValidationFailure: return "ValidationFailure";
    case ErrorKind::kSamplingFailed: return "SamplingFailed";
    case ErrorKind::kGridTooCoarse: return "GridTooCoarse";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mlab

#endif  // MLAB_ERRORS_HPP_
