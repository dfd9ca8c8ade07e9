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

// Data-parallel inner loops shared by the numerical modules.
//
// Every kernel has a scalar reference implementation (namespace scalar) and,
// on x86-64 builds, an AVX2+FMA variant (namespace avx2). The unqualified
// entry points dispatch at runtime on the active instruction set; the
// namespaced variants stay public so equivalence tests can call both.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace cusp::simd {

enum class Isa { kScalar, kAvx2 };

/// Best instruction set supported by the running CPU and compiled in.
Isa detected_isa();

/// Instruction set used by the dispatching entry points. Defaults to
/// detected_isa(), or to scalar when the environment variable
/// CUSP_SIMD=scalar is set.
Isa active_isa();

/// Override dispatch (tests, benchmarks). Requesting an ISA that is not
/// available falls back to scalar.
void set_active_isa(Isa isa);

const char* isa_name(Isa isa);

/// Montgomery parameters for an odd modulus p < 2^31.
struct MontgomeryModulus {
  uint32_t p = 0;
  uint32_t p_inv_neg = 0;  // -p^{-1} mod 2^32
  uint32_t r2 = 0;         // 2^64 mod p

  static MontgomeryModulus make(uint32_t p);

  uint32_t to_mont(uint32_t a) const;
  uint32_t from_mont(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;  // Montgomery product
};

/// Sum of weights[i] * e(phases[i]) with e(x) = exp(2 pi i x).
/// Phases are in turns; only their fractional parts matter. Lanes carry
/// Kahan compensation for both components.
std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases);

/// Kahan-compensated sum.
double compensated_sum(std::span<const double> values);

/// Kahan-compensated dot product.
double compensated_dot(std::span<const double> a, std::span<const double> b);

/// One radix-2 stage of an in-place decimation-in-frequency NTT over
/// Montgomery-form residues: for every block of length 2*half, applies the
/// Gentleman-Sande butterfly (x, y) -> (x + y, (x - y) * twiddle[j]).
/// twiddles has length `half` and is in Montgomery form.
void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);

/// Decimation-in-time stage: (x, y) -> (x + y*w, x - y*w).
void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);

/// Pointwise Montgomery product a[i] <- a[i]*b[i].
void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod);

namespace scalar {
std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases);
double compensated_sum(std::span<const double> values);
double compensated_dot(std::span<const double> a, std::span<const double> b);
void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);
void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);
void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod);
}  // namespace scalar

namespace avx2 {
/// True when the AVX2 variants were compiled into this build.
bool compiled();
std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases);
double compensated_sum(std::span<const double> values);
double compensated_dot(std::span<const double> a, std::span<const double> b);
void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);
void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod);
void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod);
}  // namespace avx2

}  // namespace cusp::simd
