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

#include <cassert>
#include <cmath>
#include <numbers>

#include "cusp/simd/kernels.hpp"

namespace cusp::simd::scalar {

namespace {

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

inline uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
  const uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

}  // namespace

std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases) {
  assert(weights.size() == phases.size());
  Kahan re, im;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double r = phases[i] - std::nearbyint(phases[i]);
    const double angle = 2.0 * std::numbers::pi * r;
    re.add(weights[i] * std::cos(angle));
    im.add(weights[i] * std::sin(angle));
  }
  return {re.sum, im.sum};
}

double compensated_sum(std::span<const double> values) {
  Kahan acc;
  for (double v : values) acc.add(v);
  return acc.sum;
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  Kahan acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.sum;
}

void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  const uint32_t p = mod.p;
  for (std::size_t base = 0; base < data.size(); base += 2 * half) {
    uint32_t* x = data.data() + base;
    uint32_t* y = x + half;
    for (std::size_t j = 0; j < half; ++j) {
      const uint32_t a = x[j];
      const uint32_t b = y[j];
      x[j] = add_mod(a, b, p);
      y[j] = mod.mul(sub_mod(a, b, p), twiddles[j]);
    }
  }
}

void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  const uint32_t p = mod.p;
  for (std::size_t base = 0; base < data.size(); base += 2 * half) {
    uint32_t* x = data.data() + base;
    uint32_t* y = x + half;
    for (std::size_t j = 0; j < half; ++j) {
      const uint32_t a = x[j];
      const uint32_t b = mod.mul(y[j], twiddles[j]);
      x[j] = add_mod(a, b, p);
      y[j] = sub_mod(a, b, p);
    }
  }
}

void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod.mul(a[i], b[i]);
}

}  // namespace cusp::simd::scalar
