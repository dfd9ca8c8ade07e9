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

#include "cusp/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cusp/error.hpp"
#include "cusp/quadrature.hpp"

namespace cusp::bessel {

namespace {

void validate(int nu, double x) {
  if (nu < 0) throw DomainError("Bessel order must be non-negative");
  if (nu > kMaxOrder) {
    throw CapacityError("Bessel order " + std::to_string(nu) + " exceeds cap " +
                        std::to_string(kMaxOrder));
  }
  if (std::isnan(x) || x < 0.0 || std::isinf(x)) {
    throw DomainError("Bessel argument must be finite and non-negative");
  }
}

double flush(long double v) {
  return std::abs(v) < kFlushBelow ? std::copysign(0.0, static_cast<double>(v))
                                   : static_cast<double>(v);
}

int miller_start(int nu, double x) {
  const double top = std::max(static_cast<double>(nu), std::ceil(x));
  const int n = static_cast<int>(top + 50.0 + 12.0 * std::cbrt(top));
  return n + (n % 2);
}

constexpr long double kRescaleAbove = 1e250L;
constexpr long double kRescaleBy = 1e-250L;

}  // namespace

double bessel_j_series(int nu, double x) {
  validate(nu, x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const long double half = static_cast<long double>(x) / 2;
  const long double log_pref = nu * std::log(half) - std::lgamma(static_cast<long double>(nu) + 1);
  if (log_pref < -800.0L) return 0.0;
  const long double q = -half * half;
  long double term = 1, sum = 1;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 2) break;
  }
  return flush(std::exp(log_pref) * sum);
}

double bessel_j_miller(int nu, double x) {
  validate(nu, x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const int start = miller_start(nu, x);
  const long double two_over_x = 2.0L / x;
  long double above = 0, cur = 1e-30L, norm = 0, target = 0;
  for (int k = start; k >= 1; --k) {
    // cur = b_k, above = b_{k+1}; b_{k-1} = (2k/x) b_k - b_{k+1}.
    if (k == nu) target = cur;
    if (k % 2 == 0) norm += 2 * cur;
    const long double below = k * two_over_x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      target *= kRescaleBy;
    }
  }
  norm += cur;  // b_0
  if (nu == 0) target = cur;
  return flush(target / norm);
}

std::vector<double> bessel_j_range(int nu_max, double x) {
  validate(nu_max, x);
  std::vector<double> out(static_cast<std::size_t>(nu_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = miller_start(nu_max, x);
  std::vector<long double> b(static_cast<std::size_t>(nu_max) + 1, 0.0L);
  const long double two_over_x = 2.0L / x;
  long double above = 0, cur = 1e-30L, norm = 0;
  for (int k = start; k >= 1; --k) {
    if (k <= nu_max) b[k] = cur;
    if (k % 2 == 0) norm += 2 * cur;
    const long double below = k * two_over_x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      for (int j = std::max(k, 1); j <= nu_max; ++j) b[j] *= kRescaleBy;
    }
  }
  norm += cur;
  b[0] = cur;
  for (int k = 0; k <= nu_max; ++k) out[k] = flush(b[k] / norm);
  return out;
}

double bessel_j_hankel(int nu, double x) {
  validate(nu, x);
  const long double mu = 4.0L * nu * nu;
  const long double inv8x = 1.0L / (8.0L * x);
  long double p = 1, q = 0, term = 1, last = 1e300L;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1;
    term *= (mu - odd * odd) * inv8x / k;
    const long double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    last = mag;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (mag < 1e-20L) break;
  }
  // chi = x - (2 nu + 1) pi / 4; reduce the phase offset by octants.
  const int octant = (2 * nu + 1) % 8;
  const long double phi = octant * std::numbers::pi_v<long double> / 4;
  const long double cx = std::cos(static_cast<long double>(x));
  const long double sx = std::sin(static_cast<long double>(x));
  const long double cp = std::cos(phi), sp = std::sin(phi);
  const long double cos_chi = cx * cp + sx * sp;
  const long double sin_chi = sx * cp - cx * sp;
  const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * x));
  return flush(amp * (p * cos_chi - q * sin_chi));
}

double bessel_j(int nu, double x) {
  validate(nu, x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x <= std::max(kSeriesX, nu / kSeriesOrderRatio)) return bessel_j_series(nu, x);
  if (x >= kHankelBase + kHankelScale * static_cast<double>(nu) * nu) {
    return bessel_j_hankel(nu, x);
  }
  return bessel_j_miller(nu, x);
}

double bessel_j_oracle(int nu, double x) {
  validate(nu, x);
  const double pi = std::numbers::pi;
  auto f = [nu, x](double t) { return std::cos(nu * t - x * std::sin(t)); };
  const int panels = static_cast<int>(std::ceil((x + nu) / 2.0)) + 4;
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i) breaks[i] = pi * i / panels;
  const auto r = quad::integrate_panels<double>(f, breaks, 1e-13 * pi);
  return r.value / pi;
}

Cutoff truncation_cutoff(int nu, double a, double amax) {
  if (nu < 1) throw DomainError("truncation_cutoff needs nu >= 1");
  Cutoff c;
  const double log_x = std::log(2.0) +
                       (std::lgamma(nu + 1.0) - a * std::log(10.0)) / static_cast<double>(nu);
  c.x_star = std::exp(log_x);
  c.c_min = amax / c.x_star;
  return c;
}

double kloosterman_bessel_tail_bound(int nu, double y, double c) {
  if (nu < 2) throw DomainError("tail bound needs nu >= 2");
  const double log_b = std::log(2.0 * std::numbers::pi) + nu * std::log(y / 2.0) -
                       std::lgamma(nu + 1.0) + (1.0 - nu) * std::log(c) - std::log(nu - 1.0);
  return std::exp(log_b);
}

long kloosterman_bessel_tail_cutoff(int nu, double y, double a) {
  if (nu < 2) throw DomainError("tail cutoff needs nu >= 2");
  if (y <= 0.0) return 1;
  const double log_c = (std::log(2.0 * std::numbers::pi) + nu * std::log(y / 2.0) -
                        std::lgamma(nu + 1.0) - std::log(nu - 1.0) + a * std::log(10.0)) /
                       (nu - 1.0);
  const double c = std::ceil(std::exp(log_c));
  return std::max(1L, static_cast<long>(c));
}

}  // namespace cusp::bessel
