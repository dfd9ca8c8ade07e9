/*
 * Copyright 2026 The cusp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

/// Failure categories. The CLI maps Domain/Validation to exit code 2 and
/// Capacity/Accuracy (and the numerical failures) to exit code 3.
enum class ErrorKind {
  kDomain,
  kValidation,
  kCapacity,
  kAccuracy,
  kCoverage,
  kRange,
  kRegime,
  kHypothesis,
  kConditioning,
  kDiagonalization,
  kFit,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CUSP_DEFINE_ERROR(Name, Kind)                              \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(Kind, what) {}  \
  };

CUSP_DEFINE_ERROR(DomainError, ErrorKind::kDomain)
CUSP_DEFINE_ERROR(ValidationError, ErrorKind::kValidation)
CUSP_DEFINE_ERROR(CapacityError, ErrorKind::kCapacity)
CUSP_DEFINE_ERROR(AccuracyError, ErrorKind::kAccuracy)
CUSP_DEFINE_ERROR(CoverageError, ErrorKind::kCoverage)
CUSP_DEFINE_ERROR(RangeError, ErrorKind::kRange)
CUSP_DEFINE_ERROR(RegimeError, ErrorKind::kRegime)
CUSP_DEFINE_ERROR(HypothesisError, ErrorKind::kHypothesis)
CUSP_DEFINE_ERROR(ConditioningError, ErrorKind::kConditioning)
CUSP_DEFINE_ERROR(DiagonalizationError, ErrorKind::kDiagonalization)
CUSP_DEFINE_ERROR(FitError, ErrorKind::kFit)

#undef CUSP_DEFINE_ERROR

}  // namespace cusp
