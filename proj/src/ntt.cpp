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

#include "cusp/ntt.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <string>

#include "cusp/error.hpp"

namespace cusp::ntt {

namespace {

uint64_t mul_mod64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod64(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod64(r, b, m);
    b = mul_mod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for n < 3.3e24 with these bases.
bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    uint64_t x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint32_t find_generator(uint32_t p) {
  std::vector<uint32_t> factors;
  uint32_t m = p - 1;
  for (uint32_t f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) factors.push_back(m);
  for (uint32_t g = 2;; ++g) {
    bool ok = true;
    for (uint32_t f : factors) {
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

std::vector<Prime> generate_primes() {
  std::vector<Prime> out;
  const uint64_t step = uint64_t{1} << kMinTwoAdicity;
  for (uint64_t c = (uint64_t{1} << 31) / step; c >= 1; --c) {
    const uint64_t p = c * step + 1;
    if (p >= (uint64_t{1} << 31) || !is_prime(p)) continue;
    Prime pr;
    pr.p = static_cast<uint32_t>(p);
    pr.generator = find_generator(pr.p);
    pr.two_adicity = std::countr_zero(static_cast<uint32_t>(p - 1));
    out.push_back(pr);
  }
  return out;
}

}  // namespace

uint32_t pow_mod(uint32_t base, uint64_t exp, uint32_t p) {
  return static_cast<uint32_t>(pow_mod64(base, exp, p));
}

std::span<const Prime> primes() {
  static const std::vector<Prime> table = generate_primes();
  return table;
}

Plan::Plan(const Prime& prime, std::size_t size)
    : size_(size), mod_(simd::MontgomeryModulus::make(prime.p)) {
  if (!std::has_single_bit(size) ||
      std::countr_zero(size) > prime.two_adicity) {
    throw CapacityError("NTT size " + std::to_string(size) +
                        " unsupported for prime " + std::to_string(prime.p));
  }
  const uint32_t p = prime.p;
  const int levels = std::countr_zero(size);
  fwd_twiddles_.resize(levels);
  inv_twiddles_.resize(levels);
  for (int lv = 0; lv < levels; ++lv) {
    const std::size_t half = std::size_t{1} << lv;
    const uint32_t root = pow_mod(prime.generator, (p - 1) / (2 * half), p);
    const uint32_t iroot = pow_mod(root, p - 2, p);
    auto& f = fwd_twiddles_[lv];
    auto& b = inv_twiddles_[lv];
    f.resize(half);
    b.resize(half);
    uint32_t w = 1;
    uint32_t iw = 1;
    for (std::size_t j = 0; j < half; ++j) {
      f[j] = mod_.to_mont(w);
      b[j] = mod_.to_mont(iw);
      w = static_cast<uint32_t>(uint64_t{w} * root % p);
      iw = static_cast<uint32_t>(uint64_t{iw} * iroot % p);
    }
  }
  inv_size_mont_ = mod_.to_mont(pow_mod(static_cast<uint32_t>(size % p), p - 2, p));
}

void Plan::forward(std::span<uint32_t> data) const {
  assert(data.size() == size_);
  for (int lv = static_cast<int>(fwd_twiddles_.size()) - 1; lv >= 0; --lv) {
    simd::ntt_dif_stage(data, std::size_t{1} << lv, fwd_twiddles_[lv], mod_);
  }
}

void Plan::inverse(std::span<uint32_t> data) const {
  assert(data.size() == size_);
  for (std::size_t lv = 0; lv < inv_twiddles_.size(); ++lv) {
    simd::ntt_dit_stage(data, std::size_t{1} << lv, inv_twiddles_[lv], mod_);
  }
  const std::vector<uint32_t> scale(size_, inv_size_mont_);
  simd::mont_pointwise_mul(data, scale, mod_);
}

std::vector<uint32_t> convolve_mod(std::span<const uint32_t> a,
                                   std::span<const uint32_t> b,
                                   std::size_t out_len, const Prime& prime) {
  if (a.empty() || b.empty() || out_len == 0) {
    return std::vector<uint32_t>(out_len, 0);
  }
  const std::size_t la = std::min(a.size(), out_len);
  const std::size_t lb = std::min(b.size(), out_len);
  const std::size_t size = std::bit_ceil(la + lb - 1);
  if (size > kMaxTransform) {
    throw CapacityError("convolution length " + std::to_string(la + lb - 1) +
                        " exceeds the transform cap");
  }
  const Plan plan(prime, size);
  const auto& mod = plan.modulus();
  std::vector<uint32_t> fa(size, 0);
  for (std::size_t i = 0; i < la; ++i) fa[i] = mod.to_mont(a[i]);
  plan.forward(fa);
  const bool same = a.data() == b.data() && la == lb;
  if (same) {
    simd::mont_pointwise_mul(fa, fa, mod);
  } else {
    std::vector<uint32_t> fb(size, 0);
    for (std::size_t i = 0; i < lb; ++i) fb[i] = mod.to_mont(b[i]);
    plan.forward(fb);
    simd::mont_pointwise_mul(fa, fb, mod);
  }
  plan.inverse(fa);
  fa.resize(out_len, 0);
  for (auto& v : fa) v = mod.from_mont(v);
  return fa;
}

std::vector<mpz_class> convolve_exact(std::span<const mpz_class> a,
                                      std::span<const mpz_class> b,
                                      std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) {
    return std::vector<mpz_class>(out_len, 0);
  }
  const std::size_t la = std::min(a.size(), out_len);
  const std::size_t lb = std::min(b.size(), out_len);
  auto max_bits = [](std::span<const mpz_class> v, std::size_t len) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < len; ++i) {
      bits = std::max(bits, mpz_sizeinbase(v[i].get_mpz_t(), 2));
    }
    return bits;
  };
  // |c_n| <= min(la, lb) * max|a| * max|b|; need M > 2 * bound.
  const std::size_t bound_bits = max_bits(a, la) + max_bits(b, lb) +
                                 std::bit_width(std::min(la, lb)) + 2;
  const auto table = primes();
  std::vector<Prime> chosen;
  double acc_bits = 0.0;
  for (const auto& pr : table) {
    if (acc_bits > static_cast<double>(bound_bits)) break;
    chosen.push_back(pr);
    acc_bits += std::log2(static_cast<double>(pr.p));
  }
  if (acc_bits <= static_cast<double>(bound_bits)) {
    throw CapacityError("coefficient bound of " + std::to_string(bound_bits) +
                        " bits exceeds the available CRT primes");
  }
  const std::size_t k = chosen.size();
  const bool same = a.data() == b.data() && la == lb;

  std::vector<std::vector<uint32_t>> residues(k);
  for (std::size_t j = 0; j < k; ++j) {
    const uint32_t p = chosen[j].p;
    std::vector<uint32_t> ra(la), rb;
    for (std::size_t i = 0; i < la; ++i) {
      ra[i] = static_cast<uint32_t>(mpz_fdiv_ui(a[i].get_mpz_t(), p));
    }
    if (same) {
      residues[j] = convolve_mod(ra, ra, out_len, chosen[j]);
    } else {
      rb.resize(lb);
      for (std::size_t i = 0; i < lb; ++i) {
        rb[i] = static_cast<uint32_t>(mpz_fdiv_ui(b[i].get_mpz_t(), p));
      }
      residues[j] = convolve_mod(ra, rb, out_len, chosen[j]);
    }
  }

  // Garner: inv[i][j] = p_i^{-1} mod p_j for i < j.
  std::vector<std::vector<uint32_t>> inv(k, std::vector<uint32_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      inv[i][j] = pow_mod(chosen[i].p % chosen[j].p, chosen[j].p - 2, chosen[j].p);
    }
  }
  mpz_class modulus = 1;
  for (const auto& pr : chosen) modulus *= pr.p;
  const mpz_class half_modulus = modulus / 2;

  std::vector<mpz_class> out(out_len);
  std::vector<uint64_t> v(k);
  for (std::size_t n = 0; n < out_len; ++n) {
    for (std::size_t j = 0; j < k; ++j) {
      const uint64_t p = chosen[j].p;
      uint64_t t = residues[j][n];
      for (std::size_t i = 0; i < j; ++i) {
        t = (t + p - v[i] % p) % p;
        t = t * inv[i][j] % p;
      }
      v[j] = t;
    }
    mpz_class& x = out[n];
    x = static_cast<unsigned long>(v[k - 1]);
    for (std::size_t i = k - 1; i-- > 0;) {
      x *= static_cast<unsigned long>(chosen[i].p);
      x += static_cast<unsigned long>(v[i]);
    }
    if (x > half_modulus) x -= modulus;
  }
  return out;
}

}  // namespace cusp::ntt
