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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and is only entered after runtime detection; without those flags every
// entry point forwards to the scalar reference.

#include "cusp/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

#include <cassert>
#include <numbers>

namespace cusp::simd::avx2 {

bool compiled() { return true; }

namespace {

struct KahanLanes {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d y = _mm256_sub_pd(x, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }

  // Folds the four lanes (and any scalar tail) with scalar Kahan steps.
  double reduce(double tail_sum, double tail_comp) const {
    alignas(32) double s[4];
    alignas(32) double c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    double acc = 0.0;
    double cc = 0.0;
    auto add = [&](double x) {
      const double y = x - cc;
      const double t = acc + y;
      cc = (t - acc) - y;
      acc = t;
    };
    for (int i = 0; i < 4; ++i) {
      add(s[i]);
      add(-c[i]);
    }
    add(tail_sum);
    add(-tail_comp);
    return acc;
  }
};

struct ScalarKahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// sin and cos of a in [-pi/4, pi/4], Taylor through degree 17 / 18.
inline void sincos_octant(__m256d a, __m256d& s, __m256d& c) {
  const __m256d a2 = _mm256_mul_pd(a, a);
  __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0);  // 1/17!
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(-1.0 / 1307674368000.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(1.0 / 6227020800.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(-1.0 / 39916800.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(1.0 / 362880.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(-1.0 / 5040.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(1.0 / 120.0));
  ps = _mm256_fmadd_pd(ps, a2, _mm256_set1_pd(-1.0 / 6.0));
  ps = _mm256_mul_pd(ps, a2);
  s = _mm256_fmadd_pd(ps, a, a);

  __m256d pc = _mm256_set1_pd(1.0 / 6402373705728000.0);  // 1/18!
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(-1.0 / 20922789888000.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(1.0 / 87178291200.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(-1.0 / 479001600.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(1.0 / 3628800.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(-1.0 / 40320.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(1.0 / 720.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(-1.0 / 24.0));
  pc = _mm256_fmadd_pd(pc, a2, _mm256_set1_pd(0.5));
  c = _mm256_fnmadd_pd(pc, a2, _mm256_set1_pd(1.0));
}

// cos and sin of 2*pi*theta.
inline void sincos_turns(__m256d theta, __m256d& out_cos, __m256d& out_sin) {
  const __m256d r = _mm256_sub_pd(
      theta, _mm256_round_pd(theta, _MM_FROUND_TO_NEAREST_INT |
                                        _MM_FROUND_NO_EXC));
  const __m256d y = _mm256_mul_pd(r, _mm256_set1_pd(4.0));
  const __m256d q =
      _mm256_round_pd(y, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d f = _mm256_sub_pd(y, q);
  const __m256d a = _mm256_mul_pd(f, _mm256_set1_pd(std::numbers::pi / 2.0));
  __m256d s, c;
  sincos_octant(a, s, c);

  // Quadrant q mod 4 in {0,1,2,3}.
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d qm = _mm256_sub_pd(
      q, _mm256_mul_pd(four, _mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.25)))));
  const __m256d m1 = _mm256_cmp_pd(qm, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d m2 = _mm256_cmp_pd(qm, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d m3 = _mm256_cmp_pd(qm, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
  const __m256d swap = _mm256_or_pd(m1, m3);
  const __m256d neg_c = _mm256_or_pd(m1, m2);
  const __m256d neg_s = _mm256_or_pd(m2, m3);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d base_c = _mm256_blendv_pd(c, s, swap);
  const __m256d base_s = _mm256_blendv_pd(s, c, swap);
  out_cos = _mm256_xor_pd(base_c, _mm256_and_pd(neg_c, sign));
  out_sin = _mm256_xor_pd(base_s, _mm256_and_pd(neg_s, sign));
}

inline __m256i add_mod8(__m256i a, __m256i b, __m256i p) {
  const __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, p));
}

inline __m256i sub_mod8(__m256i a, __m256i b, __m256i p) {
  const __m256i d = _mm256_sub_epi32(a, b);
  return _mm256_min_epu32(d, _mm256_add_epi32(d, p));
}

// Montgomery product of eight lanes, inputs in [0, p), output in [0, p).
inline __m256i mont_mul8(__m256i a, __m256i b, __m256i p, __m256i pinv) {
  const __m256i a_odd = _mm256_srli_epi64(a, 32);
  const __m256i b_odd = _mm256_srli_epi64(b, 32);
  const __m256i t_even = _mm256_mul_epu32(a, b);
  const __m256i t_odd = _mm256_mul_epu32(a_odd, b_odd);
  const __m256i m_even = _mm256_mul_epu32(t_even, pinv);
  const __m256i m_odd = _mm256_mul_epu32(t_odd, pinv);
  const __m256i u_even =
      _mm256_add_epi64(t_even, _mm256_mul_epu32(m_even, p));
  const __m256i u_odd = _mm256_add_epi64(t_odd, _mm256_mul_epu32(m_odd, p));
  const __m256i u =
      _mm256_blend_epi32(_mm256_srli_epi64(u_even, 32), u_odd, 0b10101010);
  return _mm256_min_epu32(u, _mm256_sub_epi32(u, p));
}

}  // namespace

std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases) {
  assert(weights.size() == phases.size());
  const std::size_t n = weights.size();
  KahanLanes re, im;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    const __m256d th = _mm256_loadu_pd(phases.data() + i);
    __m256d c, s;
    sincos_turns(th, c, s);
    re.add(_mm256_mul_pd(w, c));
    im.add(_mm256_mul_pd(w, s));
  }
  ScalarKahan tail_re, tail_im;
  if (i < n) {
    alignas(32) double w4[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double t4[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; i + j < n; ++j) {
      w4[j] = weights[i + j];
      t4[j] = phases[i + j];
    }
    __m256d c, s;
    sincos_turns(_mm256_load_pd(t4), c, s);
    alignas(32) double cr[4], sr[4];
    _mm256_store_pd(cr, _mm256_mul_pd(_mm256_load_pd(w4), c));
    _mm256_store_pd(sr, _mm256_mul_pd(_mm256_load_pd(w4), s));
    for (std::size_t j = 0; i + j < n; ++j) {
      tail_re.add(cr[j]);
      tail_im.add(sr[j]);
    }
  }
  return {re.reduce(tail_re.sum, tail_re.comp),
          im.reduce(tail_im.sum, tail_im.comp)};
}

double compensated_sum(std::span<const double> values) {
  KahanLanes acc;
  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc.add(_mm256_loadu_pd(values.data() + i));
  ScalarKahan tail;
  for (; i < n; ++i) tail.add(values[i]);
  return acc.reduce(tail.sum, tail.comp);
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  KahanLanes acc;
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc.add(_mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                          _mm256_loadu_pd(b.data() + i)));
  }
  ScalarKahan tail;
  for (; i < n; ++i) tail.add(a[i] * b[i]);
  return acc.reduce(tail.sum, tail.comp);
}

void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  if (half < 8) {
    scalar::ntt_dif_stage(data, half, twiddles, mod);
    return;
  }
  const __m256i p = _mm256_set1_epi32(static_cast<int>(mod.p));
  const __m256i pinv = _mm256_set1_epi32(static_cast<int>(mod.p_inv_neg));
  for (std::size_t base = 0; base < data.size(); base += 2 * half) {
    uint32_t* x = data.data() + base;
    uint32_t* y = x + half;
    for (std::size_t j = 0; j < half; j += 8) {
      const __m256i a = _mm256_loadu_si256(reinterpret_cast<__m256i*>(x + j));
      const __m256i b = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + j));
      const __m256i w =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(twiddles.data() + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(x + j), add_mod8(a, b, p));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + j),
                          mont_mul8(sub_mod8(a, b, p), w, p, pinv));
    }
  }
}

void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  if (half < 8) {
    scalar::ntt_dit_stage(data, half, twiddles, mod);
    return;
  }
  const __m256i p = _mm256_set1_epi32(static_cast<int>(mod.p));
  const __m256i pinv = _mm256_set1_epi32(static_cast<int>(mod.p_inv_neg));
  for (std::size_t base = 0; base < data.size(); base += 2 * half) {
    uint32_t* x = data.data() + base;
    uint32_t* y = x + half;
    for (std::size_t j = 0; j < half; j += 8) {
      const __m256i a = _mm256_loadu_si256(reinterpret_cast<__m256i*>(x + j));
      const __m256i w =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(twiddles.data() + j));
      const __m256i b = mont_mul8(
          _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + j)), w, p, pinv);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(x + j), add_mod8(a, b, p));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + j), sub_mod8(a, b, p));
    }
  }
}

void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod) {
  assert(a.size() == b.size());
  const __m256i p = _mm256_set1_epi32(static_cast<int>(mod.p));
  const __m256i pinv = _mm256_set1_epi32(static_cast<int>(mod.p_inv_neg));
  std::size_t i = 0;
  for (; i + 8 <= a.size(); i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<__m256i*>(a.data() + i));
    const __m256i y =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a.data() + i),
                        mont_mul8(x, y, p, pinv));
  }
  for (; i < a.size(); ++i) a[i] = mod.mul(a[i], b[i]);
}

}  // namespace cusp::simd::avx2

#else  // no AVX2 in this build

namespace cusp::simd::avx2 {

bool compiled() { return false; }

std::complex<double> phased_sum(std::span<const double> weights,
                                std::span<const double> phases) {
  return scalar::phased_sum(weights, phases);
}
double compensated_sum(std::span<const double> values) {
  return scalar::compensated_sum(values);
}
double compensated_dot(std::span<const double> a, std::span<const double> b) {
  return scalar::compensated_dot(a, b);
}
void ntt_dif_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  scalar::ntt_dif_stage(data, half, twiddles, mod);
}
void ntt_dit_stage(std::span<uint32_t> data, std::size_t half,
                   std::span<const uint32_t> twiddles,
                   const MontgomeryModulus& mod) {
  scalar::ntt_dit_stage(data, half, twiddles, mod);
}
void mont_pointwise_mul(std::span<uint32_t> a, std::span<const uint32_t> b,
                        const MontgomeryModulus& mod) {
  scalar::mont_pointwise_mul(a, b, mod);
}

}  // namespace cusp::simd::avx2

#endif
