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

#include "cusp/weights.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

#include "cusp/error.hpp"
#include "cusp/quadrature.hpp"

namespace cusp::weights {

namespace {

// Truncated Taylor series in (t - t0) through degree kMaxOrder.
struct Jet {
  std::array<double, kMaxOrder + 1> c{};

  static Jet variable(double t0) {
    Jet j;
    j.c[0] = t0;
    j.c[1] = 1.0;
    return j;
  }
  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  friend Jet operator+(Jet a, const Jet& b) {
    for (int i = 0; i <= kMaxOrder; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int i = 0; i <= kMaxOrder; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= kMaxOrder; ++i) {
      for (int j = 0; i + j <= kMaxOrder; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kMaxOrder; ++k) {
      double s = a.c[k];
      for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
      r.c[k] = s / b.c[0];
    }
    return r;
  }
  Jet exp() const {
    Jet r;
    r.c[0] = std::exp(c[0]);
    for (int k = 1; k <= kMaxOrder; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * c[j] * r.c[k - j];
      r.c[k] = s / k;
    }
    return r;
  }
  double derivative(int order) const {
    double f = 1.0;
    for (int i = 2; i <= order; ++i) f *= i;
    return c[order] * f;
  }
};

void check_order(int order, int max) {
  if (order < 0 || order > max) {
    throw DomainError("derivative order " + std::to_string(order) + " unsupported");
  }
}

// exp(r) with r -> -inf at the support edge; beyond this every derivative
// (a polynomial in 1/p times exp(-1/p)) is below the double range.
constexpr double kUnderflowExponent = -800.0;

double bump(const Jet& exponent, int order) {
  if (exponent.c[0] < kUnderflowExponent) return 0.0;
  return exponent.exp().derivative(order);
}

}  // namespace

double phi(double t, int order) {
  check_order(order, kMaxOrder);
  if (!(t > 1.0 && t < 2.0)) return 0.0;
  const Jet s = Jet::variable(t);
  const Jet p = (s - Jet::constant(1.0)) * (Jet::constant(2.0) - s);
  return bump(Jet::constant(-1.0) / p, order);
}

double g0(double t, int order) {
  check_order(order, kMaxOrder);
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  const Jet s = Jet::variable(t);
  const Jet s2 = s * s;
  return bump(Jet::constant(0.0) - s2 / (Jet::constant(1.0) - s2), order);
}

namespace {

// Trapezoid sampling step in t and FFT length; frequency spacing is
// 1 / (kLength * kStep).
constexpr int kSamplesPerUnit = 1024;
constexpr int kLength = 1 << 17;

}  // namespace

G0Transform::G0Transform(double range) : range_(range) {
  const double dt = 1.0 / kSamplesPerUnit;
  h_ = 1.0 / (kLength * dt);
  const int count = static_cast<int>(std::ceil(range / h_)) + 4;
  if (count > kLength / 2) throw RangeError("g0_hat range too large for the FFT grid");
  moments_.assign(kMaxOrder + 1, std::vector<double>(count, 0.0));

  double* in = fftw_alloc_real(kLength);
  fftw_complex* out = fftw_alloc_complex(kLength / 2 + 1);
  fftw_plan plan;
  {
    static std::mutex planner_mutex;
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(kLength, in, out, FFTW_ESTIMATE);
  }
  const std::complex<double> minus_two_pi_i(0.0, -2.0 * std::numbers::pi);
  for (int ell = 0; ell <= kMaxOrder; ++ell) {
    for (int k = 0; k < kLength; ++k) in[k] = 0.0;
    for (int k = -kSamplesPerUnit + 1; k < kSamplesPerUnit; ++k) {
      const double t = k * dt;
      const double w = std::pow(t, ell) * g0(t);
      in[(k + kLength) % kLength] = w;
    }
    fftw_execute(plan);
    const std::complex<double> factor = std::pow(minus_two_pi_i, ell) * dt;
    for (int j = 0; j < count; ++j) {
      const std::complex<double> v(out[j][0], out[j][1]);
      moments_[ell][j] = (factor * v).real();
    }
  }
  {
    static std::mutex planner_mutex;
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
}

const G0Transform& G0Transform::instance() {
  static const G0Transform shared(kDefaultRange);
  return shared;
}

double G0Transform::operator()(double y, int order) const {
  check_order(order, kMaxDerivative);
  if (std::isnan(y)) throw DomainError("g0_hat argument is NaN");
  const double a = std::abs(y);
  if (a > range_) {
    throw RangeError("g0_hat argument " + std::to_string(y) + " outside cached range " +
                     std::to_string(range_));
  }
  // Quintic Hermite on [y_j, y_{j+1}] from value, first and second
  // derivative of the order-th derivative.
  const auto& f0 = moments_[order];
  const auto& f1 = moments_[order + 1];
  const auto& f2 = moments_[order + 2];
  const std::size_t j = static_cast<std::size_t>(a / h_);
  const double s = a / h_ - static_cast<double>(j);
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h00 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h10 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h20 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
  const double h01 = 10 * s3 - 15 * s4 + 6 * s5;
  const double h11 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h21 = 0.5 * (s3 - 2 * s4 + s5);
  const double v = h00 * f0[j] + h10 * h_ * f1[j] + h20 * h_ * h_ * f2[j] +
                   h01 * f0[j + 1] + h11 * h_ * f1[j + 1] + h21 * h_ * h_ * f2[j + 1];
  // g0_hat is even: odd derivatives are odd functions.
  return (order % 2 == 1 && y < 0) ? -v : v;
}

double g0_hat(double y, int order) { return G0Transform::instance()(y, order); }

double g0_hat_quadrature(double y, int order) {
  check_order(order, kMaxOrder);
  // (-2 pi i)^order int t^order g0(t) e(-y t) dt; real by symmetry:
  // even order -> cos part, odd order -> sin part.
  const double w = 2.0 * std::numbers::pi * y;
  const double scale = std::pow(2.0 * std::numbers::pi, order);
  auto f = [&](double t) {
    const double base = std::pow(t, order) * g0(t);
    return order % 2 == 0 ? base * std::cos(w * t) : base * std::sin(w * t);
  };
  const int panels = 8 + static_cast<int>(std::ceil(2.0 * std::abs(y)));
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i) breaks[i] = -1.0 + 2.0 * i / panels;
  const double integral = quad::integrate_panels<double>(f, breaks, 1e-14).value;
  // (-i)^order: 1, -i, -1, i. The sin part carries e(-yt) = cos - i sin.
  switch (order % 4) {
    case 0: return scale * integral;
    case 1: return -scale * integral;   // (-i)(-i sin) = -sin
    case 2: return -scale * integral;
    default: return scale * integral;   // (i)(-i sin) = sin
  }
}

}  // namespace cusp::weights
