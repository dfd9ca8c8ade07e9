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

// Number-theoretic transforms over word-sized primes and exact integer
// convolution by Chinese remaindering.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cusp/simd/kernels.hpp"

namespace cusp::ntt {

/// An NTT-friendly prime p = c * 2^s + 1 < 2^31 with a primitive root.
struct Prime {
  uint32_t p = 0;
  uint32_t generator = 0;
  int two_adicity = 0;  // s
};

/// Primes with two-adicity >= kMinTwoAdicity, largest first. Generated once
/// by deterministic Miller-Rabin search.
std::span<const Prime> primes();

inline constexpr int kMinTwoAdicity = 22;

/// Largest supported transform length, 2^kMinTwoAdicity.
inline constexpr std::size_t kMaxTransform = std::size_t{1} << kMinTwoAdicity;

uint32_t pow_mod(uint32_t base, uint64_t exp, uint32_t p);

/// Precomputed per-stage twiddles (Montgomery form) for one prime and size.
class Plan {
 public:
  Plan(const Prime& prime, std::size_t size);

  std::size_t size() const { return size_; }
  const simd::MontgomeryModulus& modulus() const { return mod_; }

  /// In-place forward transform: natural order in, bit-reversed out.
  /// Values must be in Montgomery form.
  void forward(std::span<uint32_t> data) const;

  /// Inverse of forward(), including the 1/n scaling.
  void inverse(std::span<uint32_t> data) const;

 private:
  std::size_t size_;
  simd::MontgomeryModulus mod_;
  // Stage tables indexed by log2(half).
  std::vector<std::vector<uint32_t>> fwd_twiddles_;
  std::vector<std::vector<uint32_t>> inv_twiddles_;
  uint32_t inv_size_mont_ = 0;
};

/// Cyclic-free (zero padded) product of a and b modulo one prime, truncated
/// to out_len coefficients. Inputs are ordinary residues in [0, p).
std::vector<uint32_t> convolve_mod(std::span<const uint32_t> a,
                                   std::span<const uint32_t> b,
                                   std::size_t out_len, const Prime& prime);

/// Exact truncated product of integer sequences. The number of primes is
/// chosen from a coefficient bound so reconstruction is unambiguous.
std::vector<mpz_class> convolve_exact(std::span<const mpz_class> a,
                                      std::span<const mpz_class> b,
                                      std::size_t out_len);

}  // namespace cusp::ntt
