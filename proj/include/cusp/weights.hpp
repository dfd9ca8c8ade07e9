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

// Smooth weights: the cutoff phi on (1, 2), the test function g0 on (-1, 1)
// and the Fourier transform g0_hat(y) = int g0(t) e(-y t) dt, where
// e(x) = exp(2 pi i x) throughout the library.

#include <vector>

namespace cusp::weights {

inline constexpr int kMaxOrder = 4;

/// phi(t) = exp(-1 / ((t - 1)(2 - t))) on (1, 2), zero elsewhere; order-th
/// derivative for order <= 4.
double phi(double t, int order = 0);

/// g0(t) = exp(-t^2 / (1 - t^2)) on (-1, 1), zero elsewhere.
double g0(double t, int order = 0);

enum class WeightKind { kPhi, kG0 };

/// Uniform handle over the two bumps.
class SmoothWeight {
 public:
  explicit SmoothWeight(WeightKind kind) : kind_(kind) {}
  WeightKind kind() const { return kind_; }
  double operator()(double t, int order = 0) const {
    return kind_ == WeightKind::kPhi ? phi(t, order) : g0(t, order);
  }
  double support_lo() const { return kind_ == WeightKind::kPhi ? 1.0 : -1.0; }
  double support_hi() const { return kind_ == WeightKind::kPhi ? 2.0 : 1.0; }

 private:
  WeightKind kind_;
};

/// Cached g0_hat and its derivatives on |y| <= range.
class G0Transform {
 public:
  static constexpr double kDefaultRange = 200.0;
  static constexpr int kMaxDerivative = 2;

  /// Shared instance over the default range, built on first use.
  static const G0Transform& instance();

  explicit G0Transform(double range);

  double range() const { return range_; }
  double spacing() const { return h_; }

  /// g0_hat^{(order)}(y), order <= 2. Throws RangeError for |y| > range.
  double operator()(double y, int order = 0) const;

  /// Grid values g0_hat^{(order)}(j h), j = 0..size()-1, order <= 4.
  const std::vector<double>& grid(int order) const { return moments_[order]; }

 private:
  double range_;
  double h_;
  std::vector<std::vector<double>> moments_;  // order 0..4 on the y grid
};

double g0_hat(double y, int order = 0);

/// Direct adaptive quadrature of int t^order-weighted transform; slow
/// independent check of G0Transform.
double g0_hat_quadrature(double y, int order = 0);

}  // namespace cusp::weights
