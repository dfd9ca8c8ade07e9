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

#include "cusp/error.hpp"

namespace cusp {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kAccuracy: return "accuracy";
    case ErrorKind::kCoverage: return "coverage";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kRegime: return "regime";
    case ErrorKind::kHypothesis: return "hypothesis";
    case ErrorKind::kConditioning: return "conditioning";
    case ErrorKind::kDiagonalization: return "diagonalization";
    case ErrorKind::kFit: return "fit";
  }
  return "unknown";
}

}  // namespace cusp
