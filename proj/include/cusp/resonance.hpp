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

// Resonance sums S_X(f; alpha, beta) = sum lambda_f(n) e(alpha n^beta) phi(n/X)
// and their Rankin-Selberg analogue, plus scan and exponent-fit harnesses.

#include <complex>
#include <span>
#include <vector>

#include "cusp/coeffs.hpp"

namespace cusp::resonance {

struct ResonanceParams {
  double alpha = 1.0;
  double beta = 0.5;
  double x = 1024.0;

  /// Throws DomainError unless alpha != 0, 0 < beta <= 1 and x > 0.
  void validate() const;
};

/// Integers n with phi(n/X) possibly nonzero: X < n < 2X.
struct SupportRange {
  long first = 1;
  long last = 0;  // empty when last < first
};
SupportRange support(double x);

/// sum_{X<n<2X} lambda_f(n) e(alpha n^beta) phi(n/X). Throws CoverageError
/// when the table stops before the last n.
std::complex<double> resonance_sum_single(const coeffs::CoefficientTable& f,
                                          const ResonanceParams& p);

/// sum lambda_f(n) lambda_g(n) e(alpha n^beta) phi(n/X).
std::complex<double> resonance_sum_pair(const coeffs::CoefficientTable& f,
                                        const coeffs::CoefficientTable& g,
                                        const ResonanceParams& p);

/// sum |lambda_f(n) lambda_g(n)| phi(n/X), the trivial bound for the pair sum.
double trivial_bound_pair(const coeffs::CoefficientTable& f,
                          const coeffs::CoefficientTable& g, double x);

inline constexpr double kDefaultPeakFactor = 5.0;

struct ScanRow {
  double alpha = 0.0;
  std::complex<double> value;
  double abs = 0.0;
  bool peak = false;
};

/// One row per alpha; g == nullptr gives single-form sums. A row is a peak
/// when it is a strict local maximum of |S| on the grid and exceeds
/// peak_factor times the median |S|. Alphas are evaluated in parallel.
std::vector<ScanRow> resonance_scan(const coeffs::CoefficientTable& f,
                                    const coeffs::CoefficientTable* g, double beta,
                                    std::span<const double> alphas, double x,
                                    double peak_factor = kDefaultPeakFactor);

/// The `count` highest peak rows, highest first.
std::vector<ScanRow> top_peaks(std::span<const ScanRow> rows, std::size_t count);

/// Uniform grid of `steps` points from a0 to a1 inclusive (one point if
/// steps == 1).
std::vector<double> alpha_grid(double a0, double a1, int steps);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points = 0;
};

/// Least-squares slope of log|S| against log X. Pairs with |S| == 0 are
/// dropped; fewer than 4 usable points throws FitError.
FitResult exponent_fit(std::span<const double> xs, std::span<const double> abs_values);

/// Evaluates |S| on each X (pair sum when g != nullptr) and fits.
FitResult exponent_fit(const coeffs::CoefficientTable& f,
                       const coeffs::CoefficientTable* g, double alpha, double beta,
                       std::span<const double> xs);

}  // namespace cusp::resonance
