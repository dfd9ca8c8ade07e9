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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cusp/ntt.hpp"
#include "cusp/simd/kernels.hpp"
#include "doctest.h"

using namespace cusp::simd;

namespace {

bool avx2_available() { return detected_isa() == Isa::kAvx2; }

std::vector<double> random_doubles(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("phased_sum scalar matches direct complex exponentials") {
  const auto w = random_doubles(1001, -2.0, 2.0, 1);
  const auto ph = random_doubles(1001, -1e4, 1e4, 2);
  std::complex<long double> ref = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const long double t = 2.0L * std::numbers::pi_v<long double> *
                          (ph[i] - std::nearbyint(ph[i]));
    ref += static_cast<long double>(w[i]) * std::complex<long double>(std::cos(t), std::sin(t));
  }
  const auto got = scalar::phased_sum(w, ph);
  CHECK(std::abs(got.real() - static_cast<double>(ref.real())) < 1e-12);
  CHECK(std::abs(got.imag() - static_cast<double>(ref.imag())) < 1e-12);
}

TEST_CASE("avx2 phased_sum agrees with scalar") {
  if (!avx2_available()) return;
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1003u, 100000u}) {
    const auto w = random_doubles(n, -1.0, 1.0, 10 + n);
    const auto ph = random_doubles(n, -1e5, 1e5, 20 + n);
    const auto a = scalar::phased_sum(w, ph);
    const auto b = avx2::phased_sum(w, ph);
    const double scale = std::max(1.0, static_cast<double>(n));
    CHECK(std::abs(a - b) <= 1e-14 * scale);
  }
}

TEST_CASE("avx2 sincos is accurate at quadrant boundaries") {
  if (!avx2_available()) return;
  std::vector<double> ph;
  for (int i = -64; i <= 64; ++i) ph.push_back(i / 64.0);
  for (double x : {0.125, 0.25, 0.375, 0.5, -0.5}) {
    ph.push_back(std::nextafter(x, 1.0));
    ph.push_back(std::nextafter(x, -1.0));
  }
  for (double p : ph) {
    const std::vector<double> w{1.0}, one{p};
    const auto a = scalar::phased_sum(w, one);
    const auto b = avx2::phased_sum(w, one);
    CHECK(std::abs(a - b) < 4e-16);
  }
}

TEST_CASE("compensated sum and dot agree across ISAs") {
  const auto a = random_doubles(12345, -1e3, 1e3, 5);
  const auto b = random_doubles(12345, -1.0, 1.0, 6);
  long double ref_sum = 0, ref_dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ref_sum += a[i];
    ref_dot += static_cast<long double>(a[i]) * b[i];
  }
  CHECK(std::abs(scalar::compensated_sum(a) - static_cast<double>(ref_sum)) < 1e-9);
  CHECK(std::abs(scalar::compensated_dot(a, b) - static_cast<double>(ref_dot)) < 1e-10);
  if (!avx2_available()) return;
  CHECK(std::abs(avx2::compensated_sum(a) - scalar::compensated_sum(a)) < 1e-9);
  CHECK(std::abs(avx2::compensated_dot(a, b) - scalar::compensated_dot(a, b)) < 1e-10);
}

TEST_CASE("NTT stages are bit-identical across ISAs") {
  if (!avx2_available()) return;
  const auto& prime = cusp::ntt::primes()[0];
  const auto mod = MontgomeryModulus::make(prime.p);
  std::mt19937 rng(7);
  for (std::size_t half : {1u, 2u, 4u, 8u, 16u, 512u}) {
    std::vector<uint32_t> data(4096), tw(half);
    for (auto& x : data) x = rng() % prime.p;
    for (auto& x : tw) x = rng() % prime.p;
    auto d1 = data, d2 = data;
    scalar::ntt_dif_stage(d1, half, tw, mod);
    avx2::ntt_dif_stage(d2, half, tw, mod);
    CHECK(d1 == d2);
    d1 = data;
    d2 = data;
    scalar::ntt_dit_stage(d1, half, tw, mod);
    avx2::ntt_dit_stage(d2, half, tw, mod);
    CHECK(d1 == d2);
  }
  std::vector<uint32_t> a(1037), b(1037);
  for (auto& x : a) x = rng() % prime.p;
  for (auto& x : b) x = rng() % prime.p;
  auto a1 = a, a2 = a;
  scalar::mont_pointwise_mul(a1, b, mod);
  avx2::mont_pointwise_mul(a2, b, mod);
  CHECK(a1 == a2);
}

TEST_CASE("Montgomery product matches 64-bit reduction") {
  for (const auto& prime : cusp::ntt::primes()) {
    const auto mod = MontgomeryModulus::make(prime.p);
    std::mt19937 rng(prime.p);
    for (int i = 0; i < 1000; ++i) {
      const uint32_t x = rng() % prime.p, y = rng() % prime.p;
      const uint32_t got = mod.from_mont(mod.mul(mod.to_mont(x), mod.to_mont(y)));
      CHECK(got == static_cast<uint32_t>(uint64_t{x} * y % prime.p));
    }
  }
}

TEST_CASE("forced scalar dispatch") {
  const Isa saved = active_isa();
  set_active_isa(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  set_active_isa(saved);
}

}
