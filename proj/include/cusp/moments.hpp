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

// The normalized double square moment over two weight windows, computed
// spectrally (eigenforms and harmonic weights) and geometrically (the
// diagonal / Kloosterman-Bessel decomposition D00 + D01 + D10 + D11).

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace cusp::moments {

struct MomentWindow {
  double k1 = 18, l1 = 4, k2 = 18, l2 = 4;
  double alpha = 1.0, beta = 0.5, x = 32.0;
  double epsilon = 0.1;
  int dim_cap = 2;  // largest dim S_k the spectral side will diagonalize

  void validate() const;
};

/// Even k with g0((k - K)/L) > 0, ascending.
std::vector<int> window_weights(double k, double l);

/// K1 K2 sum g0 g0 sum_f sum_g omega_f omega_g |S_X(f, g)|^2. Throws
/// CapacityError when a weight in either window has dim S_k > dim_cap.
double moment_spectral(const MomentWindow& w);

struct MomentBreakdown {
  std::complex<double> d00, d01, d10, d11;
  double spectral = 0.0;
  double residual = 0.0;  // |spectral - (d00 + d01 + d10 + d11)|
  long c_cutoff = 0;      // number of moduli summed
  double seconds = 0.0;   // wall time of the geometric evaluation

  std::complex<double> total() const { return d00 + d01 + d10 + d11; }
  double relative_residual() const { return spectral != 0.0 ? residual / spectral : residual; }
};

inline constexpr double kDefaultAccuracy = 14.0;
inline constexpr long kMaxModuli = 5000;

/// Evaluates the four D-terms by direct summation. The c-sums stop where the
/// Kloosterman-Bessel tail bound falls below 10^-accuracy for every order in
/// both windows; AccuracyError when that takes more than max_moduli. With
/// with_spectral, also fills spectral and residual.
MomentBreakdown moment_geometric(const MomentWindow& w, double accuracy = kDefaultAccuracy,
                                 bool with_spectral = false, long max_moduli = kMaxModuli);

/// Bound regimes. kLarge: K1 L1 >= X^{1+e}, K2 >= X^{1/2+e}. kK2Small:
/// K1 L1 >= X^{1+e}, K2 <= X^{1/2}. kEqual: beta < 1, K1 = K2,
/// K_j L_j <= X^{1+e}, K1^2 L1 L2 >= X^{1+beta+e}. kBetaOne: beta = 1,
/// K1 = K2, K_j L_j <= X^{1-e}. All require K_j^e <= L_j <= K_j^{1-e}.
enum class Regime { kLarge, kK2Small, kEqual, kBetaOne };

Regime parse_regime(const std::string& name);
const char* regime_name(Regime r);

/// Throws RegimeError naming the first violated hypothesis.
void check_regime(const MomentWindow& w, Regime r);

/// Right-hand side of the selected bound with implied constant 1.
double bound_rhs(const MomentWindow& w, Regime r);

struct BoundRow {
  double x = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

/// For each X: checks the regime, evaluates moment_spectral and reports
/// measured / bound_rhs.
std::vector<BoundRow> theorem_bound_report(const MomentWindow& w, Regime r,
                                           std::span<const double> xs);

}  // namespace cusp::moments
