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

#include "cusp/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace cusp::simd {

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("CUSP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
#if defined(__x86_64__) && defined(__GNUC__)
  static const bool has_avx2 = avx2::compiled() &&
                               __builtin_cpu_supports("avx2") &&
                               __builtin_cpu_supports("fma");
  return has_avx2 ? Isa::kAvx2 : Isa::kScalar;
#else
  return Isa::kScalar;
#endif
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

MontgomeryModulus MontgomeryModulus::make(uint32_t p) {
  MontgomeryModulus m;
  m.p = p;
  // Newton iteration for p^{-1} mod 2^32.
  uint32_t inv = p;
  for (int i = 0; i < 5; ++i) inv *= 2u - p * inv;
  m.p_inv_neg = 0u - inv;
  const unsigned __int128 r2 = (static_cast<unsigned __int128>(1) << 64) % p;
  m.r2 = static_cast<uint32_t>(r2);
  return m;
}

uint32_t MontgomeryModulus::mul(uint32_t a, uint32_t b) const {
  const uint64_t t = static_cast<uint64_t>(a) * b;
  const uint32_t m = static_cast<uint32_t>(t) * p_inv_neg;
  const uint64_t u = (t + static_cast<uint64_t>(m) * p) >> 32;
  return static_cast<uint32_t>(u >= p ? u - p : u);
}

uint32_t MontgomeryModulus::to_mont(uint32_t a) const { return mul(a % p, r2); }

uint32_t MontgomeryModulus::from_mont(uint32_t a) const { return mul(a, 1u); }

#define CUSP_DISPATCH(call) \
  (active_isa() == Isa::kAvx2 ? avx2::call : scalar::call)

std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases) {
  return CUSP_DISPATCH(phased_sum(weights, phases));
}

double compensated_sum(std::span<const double> values) {
  return CUSP_DISPATCH(compensated_sum(values));
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  return CUSP_DISPATCH(compensated_dot(a, b));
}

void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  CUSP_DISPATCH(ntt_dif_stage(data, half, twiddles, mod));
}

void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  CUSP_DISPATCH(ntt_dit_stage(data, half, twiddles, mod));
}

void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod) {
  CUSP_DISPATCH(mont_pointwise_mul(a, b, mod));
}

#undef CUSP_DISPATCH

}  // namespace cusp::simd
