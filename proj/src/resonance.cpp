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

#include "cusp/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cusp/error.hpp"
#include "cusp/parallel.hpp"
#include "cusp/simd/kernels.hpp"
#include "cusp/weights.hpp"

namespace cusp::resonance {

void ResonanceParams::validate() const {
  if (!(alpha != 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be nonzero");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("X must be positive");
}

SupportRange support(double x) {
  SupportRange r;
  r.first = static_cast<long>(std::floor(x)) + 1;
  r.last = static_cast<long>(std::ceil(2.0 * x)) - 1;
  return r;
}

namespace {

void check_coverage(const coeffs::CoefficientTable& t, long last) {
  if (last >= 1 && static_cast<long>(t.max_index()) < last) {
    throw CoverageError("coefficient table stops at n = " + std::to_string(t.max_index()) +
                        ", sum needs n = " + std::to_string(last));
  }
}

// weights[i] = coef(n) phi(n/X); phases reduced mod 1 before the kernel.
template <class Coef>
std::complex<double> weighted_sum(const ResonanceParams& p, Coef coef) {
  const SupportRange r = support(p.x);
  if (r.last < r.first) return {0.0, 0.0};
  std::vector<double> w, ph;
  w.reserve(r.last - r.first + 1);
  ph.reserve(r.last - r.first + 1);
  for (long n = r.first; n <= r.last; ++n) {
    const double cut = weights::phi(n / p.x);
    if (cut == 0.0) continue;
    const double t = p.alpha * std::pow(static_cast<double>(n), p.beta);
    w.push_back(coef(n) * cut);
    ph.push_back(t - std::floor(t));
  }
  return simd::phased_sum(w, ph);
}

}  // namespace

std::complex<double> resonance_sum_single(const coeffs::CoefficientTable& f,
                                          const ResonanceParams& p) {
  p.validate();
  check_coverage(f, support(p.x).last);
  return weighted_sum(p, [&](long n) { return f.lambda(n); });
}

std::complex<double> resonance_sum_pair(const coeffs::CoefficientTable& f,
                                        const coeffs::CoefficientTable& g,
                                        const ResonanceParams& p) {
  p.validate();
  const long last = support(p.x).last;
  check_coverage(f, last);
  check_coverage(g, last);
  return weighted_sum(p, [&](long n) { return f.lambda(n) * g.lambda(n); });
}

double trivial_bound_pair(const coeffs::CoefficientTable& f,
                          const coeffs::CoefficientTable& g, double x) {
  const SupportRange r = support(x);
  check_coverage(f, r.last);
  check_coverage(g, r.last);
  std::vector<double> terms;
  for (long n = r.first; n <= r.last; ++n) {
    terms.push_back(std::abs(f.lambda(n) * g.lambda(n)) * weights::phi(n / x));
  }
  return simd::compensated_sum(terms);
}

std::vector<double> alpha_grid(double a0, double a1, int steps) {
  std::vector<double> out;
  if (steps <= 0) return out;
  if (steps == 1) return {a0};
  for (int i = 0; i < steps; ++i) out.push_back(a0 + (a1 - a0) * i / (steps - 1));
  return out;
}

std::vector<ScanRow> resonance_scan(const coeffs::CoefficientTable& f,
                                    const coeffs::CoefficientTable* g, double beta,
                                    std::span<const double> alphas, double x,
                                    double peak_factor) {
  std::vector<ScanRow> rows(alphas.size());
  if (rows.empty()) return rows;
  parallel_for(rows.size(), [&](std::size_t i) {
    const ResonanceParams p{alphas[i], beta, x};
    rows[i].alpha = alphas[i];
    rows[i].value = g ? resonance_sum_pair(f, *g, p) : resonance_sum_single(f, p);
    rows[i].abs = std::abs(rows[i].value);
  });
  std::vector<double> mags;
  for (const auto& r : rows) mags.push_back(r.abs);
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double median = mags[mags.size() / 2];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool left = i == 0 || rows[i].abs > rows[i - 1].abs;
    const bool right = i + 1 == rows.size() || rows[i].abs > rows[i + 1].abs;
    rows[i].peak = left && right && rows[i].abs > peak_factor * median;
  }
  return rows;
}

std::vector<ScanRow> top_peaks(std::span<const ScanRow> rows, std::size_t count) {
  std::vector<ScanRow> peaks;
  for (const auto& r : rows) {
    if (r.peak) peaks.push_back(r);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.abs > b.abs; });
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

FitResult exponent_fit(std::span<const double> xs, std::span<const double> abs_values) {
  if (xs.size() != abs_values.size()) throw DomainError("fit inputs differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (abs_values[i] > 0.0 && xs[i] > 0.0) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(abs_values[i]));
    }
  }
  const int n = static_cast<int>(lx.size());
  if (n < 4) throw FitError("exponent fit needs 4 usable points, got " + std::to_string(n));
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw FitError("exponent fit needs distinct X values");
  FitResult r;
  r.points = n;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double e = ly[i] - (r.intercept + r.slope * lx[i]);
    rss += e * e;
  }
  r.stderr_slope = std::sqrt(rss / (n - 2) / sxx);
  return r;
}

FitResult exponent_fit(const coeffs::CoefficientTable& f,
                       const coeffs::CoefficientTable* g, double alpha, double beta,
                       std::span<const double> xs) {
  std::vector<double> mags(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const ResonanceParams p{alpha, beta, xs[i]};
    mags[i] = std::abs(g ? resonance_sum_pair(f, *g, p) : resonance_sum_single(f, p));
  });
  return exponent_fit(xs, mags);
}

}  // namespace cusp::resonance
