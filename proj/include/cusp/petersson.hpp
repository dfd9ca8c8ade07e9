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

// Petersson's trace formula for level one, both sides, and the harmonic
// weights omega_f = 2 pi^2 / ((k - 1) L(1, Sym^2 f)) fitted from it.

#include <cstdint>
#include <vector>

namespace cusp::petersson {

inline constexpr double kDefaultAccuracy = 14.0;
inline constexpr long kDefaultCCap = 2000000;

/// Kronecker delta.
inline int delta(int64_t m, int64_t n) { return m == n ? 1 : 0; }

/// delta(m,n) + 2 pi i^k sum_c S(m,n,c)/c J_{k-1}(4 pi sqrt(mn)/c), the c-sum
/// truncated where the Kloosterman-Bessel tail bound drops below 10^-A.
/// Throws AccuracyError if that needs more than c_cap terms.
double geometric_side(int64_t m, int64_t n, int k, double accuracy = kDefaultAccuracy,
                      long c_cap = kDefaultCCap);

/// Number of c terms geometric_side sums for these arguments.
long geometric_cutoff(int64_t m, int64_t n, int k, double accuracy = kDefaultAccuracy);

struct HarmonicWeight {
  int weight = 0;
  std::vector<double> omega;  // same order as coeffs::eigenforms(weight, .)
  double residual = 0.0;      // max |fit - geometric side| over the fitted pairs
  double condition = 0.0;     // 2-norm condition number of the fit matrix
};

/// Least-squares fit of sum_f omega_f lambda_f(m) lambda_f(n) =
/// geometric_side(m, n, k) over 1 <= m <= n <= pair_cap. Throws
/// ConditioningError when the system is rank deficient or the condition
/// number exceeds 1e10, and DomainError when S_k = 0.
HarmonicWeight harmonic_weights(int k, int pair_cap);

/// Smallest pair cap used by verify_petersson for the fit: 1 for dim 1,
/// dim + 1 otherwise.
int default_fit_cap(int k);

/// 2 pi^2 / ((k - 1) omega_f) for the f-th eigenform of weight k.
double sym_square_L1(int k, std::size_t f, int pair_cap = 0);

struct ResidualRow {
  int64_t m = 0;
  int64_t n = 0;
  double spectral = 0.0;
  double geometric = 0.0;
  double residual = 0.0;
};

/// Fits omega on the pairs up to default_fit_cap(k) and tabulates both sides
/// for all 1 <= m, n <= mn_cap.
std::vector<ResidualRow> petersson_table(int k, int mn_cap);

/// max |spectral - geometric| of petersson_table(k, mn_cap).
double verify_petersson(int k, int mn_cap);

}  // namespace cusp::petersson
