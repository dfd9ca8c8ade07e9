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

// Bessel functions J_nu(x) of integer order.

#include <vector>

namespace cusp::bessel {

/// Largest supported order.
inline constexpr int kMaxOrder = 20000;

/// Regime boundaries. Series: x <= max(kSeriesX, nu / kSeriesOrderRatio).
/// Hankel expansion: x >= kHankelBase + kHankelScale * nu^2. Miller backward
/// recurrence in between.
inline constexpr double kSeriesX = 12.0;
inline constexpr double kSeriesOrderRatio = 3.0;
inline constexpr double kHankelBase = 1000.0;
inline constexpr double kHankelScale = 10.0;

/// Results with magnitude below this are returned as signed zero.
inline constexpr double kFlushBelow = 1e-300;

/// J_nu(x) for integer nu >= 0 and x >= 0.
/// Throws CapacityError for nu > kMaxOrder, DomainError for NaN/negative x.
double bessel_j(int nu, double x);

/// J_0(x), ..., J_{nu_max}(x) from one backward recurrence.
std::vector<double> bessel_j_range(int nu_max, double x);

/// (1/pi) int_0^pi cos(nu t - x sin t) dt by adaptive quadrature, absolute
/// error target 1e-12. Slow; used as an independent check.
double bessel_j_oracle(int nu, double x);

/// Individual regime evaluators (exposed for overlap tests).
double bessel_j_series(int nu, double x);
double bessel_j_miller(int nu, double x);
double bessel_j_hankel(int nu, double x);

struct Cutoff {
  double x_star = 0.0;  // (x/2)^nu / nu! <= 10^-A for all x <= x_star
  double c_min = 0.0;   // amax / x_star
};

/// Argument below which the first-term bound |J_nu(x)| <= (x/2)^nu / nu!
/// guarantees |J_nu(x)| < 10^-A. Arguments 4 pi sqrt(mn) / c fall below it
/// for c >= c_min = amax / x_star.
Cutoff truncation_cutoff(int nu, double a, double amax);

/// Upper bound for 2 pi sum_{c > C} |S(m,n,c)|/c |J_nu(y / c)| using
/// |S| <= c and the first-term bound; requires nu >= 2.
double kloosterman_bessel_tail_bound(int nu, double y, double c);

/// Smallest integer C with kloosterman_bessel_tail_bound(nu, y, C) < 10^-A.
long kloosterman_bessel_tail_cutoff(int nu, double y, double a);

}  // namespace cusp::bessel
