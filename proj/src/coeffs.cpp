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

#include "cusp/coeffs.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include "cusp/error.hpp"
#include "cusp/format.hpp"
#include "cusp/ntt.hpp"

namespace cusp::coeffs {

namespace {

mpz_class from_int128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<uint64_t>(u >> 64));
  mpz_class out = hi << 64;
  out += static_cast<unsigned long>(static_cast<uint64_t>(u));
  return neg ? mpz_class(-out) : out;
}

// Top 62 bits, scaled back: relative error below 2^-61.
long double to_long_double(const mpz_class& x) {
  const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  if (bits <= 62) return static_cast<long double>(x.get_si());
  const long shift = static_cast<long>(bits) - 62;
  mpz_class top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  return std::ldexp(static_cast<long double>(top.get_si()), static_cast<int>(shift));
}

// Exponents (a, b) with k = 12 d + 4a + 6b, so that Delta^j E4^{a+3(d-j)} E6^b
// spans S_k for j = 1..d.
std::pair<int, int> miller_exponents(int weight) {
  switch (weight % 12) {
    case 0: return {0, 0};
    case 2: return {2, 1};
    case 4: return {1, 0};
    case 6: return {0, 1};
    case 8: return {2, 0};
    default: return {1, 1};
  }
}

constexpr mp_bitcnt_t kPrecision = 512;

long double mpf_to_long_double(const mpf_class& x) {
  long exp = 0;
  const double hi = mpf_get_d_2exp(&exp, x.get_mpf_t());
  mpf_class rest(0, kPrecision);
  mpf_class hi_f(hi, kPrecision);
  if (exp >= 0) {
    mpf_mul_2exp(hi_f.get_mpf_t(), hi_f.get_mpf_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpf_div_2exp(hi_f.get_mpf_t(), hi_f.get_mpf_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  rest = x - hi_f;
  long exp2 = 0;
  const double lo = mpf_get_d_2exp(&exp2, rest.get_mpf_t());
  return std::ldexp(static_cast<long double>(hi), static_cast<int>(exp)) +
         std::ldexp(static_cast<long double>(lo), static_cast<int>(exp2));
}

// det(x I - A^T) = det(x I - A), monic, coefficients low to high degree.
// Faddeev-LeVerrier over the rationals.
std::vector<mpq_class> characteristic_polynomial(
    const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t d = a.size();
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d, 0));
  std::vector<mpq_class> coef(d + 1, 0);
  coef[d] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    // M_k = A M_{k-1} + c_{d-k+1} I, with M_0 = 0.
    std::vector<std::vector<mpq_class>> next(d, std::vector<mpq_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < d; ++l) s += mpq_class(a[i][l]) * m[l][j];
        next[i][j] = s;
      }
      next[i][i] += coef[d - k + 1];
    }
    m = std::move(next);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t l = 0; l < d; ++l) tr += mpq_class(a[i][l]) * m[l][i];
    }
    coef[d - k] = -tr / static_cast<long>(k);
  }
  return coef;
}

mpf_class newton_root(const std::vector<mpq_class>& poly, long double seed) {
  mpf_class x(static_cast<double>(seed), kPrecision);
  // long double seed carries extra bits the double conversion dropped.
  x += mpf_class(static_cast<double>(seed - static_cast<long double>(static_cast<double>(seed))),
                 kPrecision);
  std::vector<mpf_class> p;
  for (const auto& c : poly) p.emplace_back(c, kPrecision);
  mpf_class value(0, kPrecision), deriv(0, kPrecision), step(0, kPrecision);
  for (int iter = 0; iter < 60; ++iter) {
    value = 0;
    deriv = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
      deriv = deriv * x + value;
      value = value * x + p[i];
    }
    if (deriv == 0) break;
    step = value / deriv;
    x -= step;
    if (step == 0 || abs(step) <= abs(x) * mpf_class(1e-140, kPrecision)) break;
  }
  return x;
}

// Solves (A^T - lambda I) c = 0 with c[0] = 1.
std::vector<mpf_class> null_vector(const std::vector<std::vector<mpz_class>>& a,
                                   const mpf_class& lambda) {
  const std::size_t d = a.size();
  const std::size_t u = d - 1;
  std::vector<std::vector<mpf_class>> sys(u, std::vector<mpf_class>(u + 1));
  for (std::size_t r = 0; r < u; ++r) {
    const std::size_t i = r + 1;
    for (std::size_t col = 0; col < u; ++col) {
      const std::size_t j = col + 1;
      sys[r][col] = mpf_class(a[j][i], kPrecision);
      if (i == j) sys[r][col] -= lambda;
    }
    sys[r][u] = -mpf_class(a[0][i], kPrecision);
  }
  for (std::size_t col = 0; col < u; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < u; ++r) {
      if (abs(sys[r][col]) > abs(sys[piv][col])) piv = r;
    }
    std::swap(sys[col], sys[piv]);
    if (sys[col][col] == 0) throw DiagonalizationError("degenerate T_2 eigenvector");
    for (std::size_t r = col + 1; r < u; ++r) {
      const mpf_class f = sys[r][col] / sys[col][col];
      for (std::size_t k = col; k <= u; ++k) sys[r][k] -= f * sys[col][k];
    }
  }
  std::vector<mpf_class> c(d, mpf_class(0, kPrecision));
  c[0] = 1;
  for (std::size_t r = u; r-- > 0;) {
    mpf_class s = sys[r][u];
    for (std::size_t k = r + 1; k < u; ++k) s -= sys[r][k] * c[k + 1];
    c[r + 1] = s / sys[r][r];
  }
  return c;
}

void check_weight(int weight) {
  if (weight < 12 || weight % 2 != 0) {
    throw DomainError("weight must be even and at least 12, got " +
                      std::to_string(weight));
  }
}

}  // namespace

IntegerSeries IntegerSeries::operator*(const IntegerSeries& other) const {
  const std::size_t len = std::min(size(), other.size());
  return IntegerSeries(ntt::convolve_exact(coeffs_, other.coeffs_, len));
}

IntegerSeries IntegerSeries::operator+(const IntegerSeries& other) const {
  const std::size_t len = std::min(size(), other.size());
  IntegerSeries out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = coeffs_[i] + other[i];
  return out;
}

IntegerSeries IntegerSeries::operator-(const IntegerSeries& other) const {
  const std::size_t len = std::min(size(), other.size());
  IntegerSeries out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = coeffs_[i] - other[i];
  return out;
}

IntegerSeries& IntegerSeries::operator-=(const IntegerSeries& other) {
  const std::size_t len = std::min(size(), other.size());
  coeffs_.resize(len);
  for (std::size_t i = 0; i < len; ++i) coeffs_[i] -= other[i];
  return *this;
}

IntegerSeries IntegerSeries::scaled(const mpz_class& factor) const {
  IntegerSeries out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = coeffs_[i] * factor;
  return out;
}

IntegerSeries IntegerSeries::pow(unsigned exponent) const {
  IntegerSeries result(size());
  if (size() > 0) result[0] = 1;
  IntegerSeries base = *this;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

IntegerSeries multiply_schoolbook(const IntegerSeries& a, const IntegerSeries& b) {
  const std::size_t len = std::min(a.size(), b.size());
  IntegerSeries out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

IntegerSeries delta_expansion(std::size_t n, std::size_t max_length) {
  if (n < 1) throw DomainError("delta_expansion needs N >= 1");
  if (n + 1 > max_length) {
    throw CapacityError("delta_expansion length " + std::to_string(n + 1) +
                        " exceeds the configured cap " + std::to_string(max_length));
  }
  // prod (1-q^m)^24 through q^{n-1}.
  const std::size_t len = n;
  // Jacobi: prod (1-q^m)^3 = sum (-1)^j (2j+1) q^{j(j+1)/2}.
  std::vector<std::pair<std::size_t, int64_t>> cube;
  for (std::size_t j = 0;; ++j) {
    const std::size_t e = j * (j + 1) / 2;
    if (e >= len) break;
    const int64_t c = (j % 2 ? -1 : 1) * static_cast<int64_t>(2 * j + 1);
    cube.emplace_back(e, c);
  }
  std::vector<int64_t> sixth(len, 0);
  for (const auto& [ei, ci] : cube) {
    for (const auto& [ej, cj] : cube) {
      if (ei + ej >= len) break;
      sixth[ei + ej] += ci * cj;
    }
  }
  std::vector<mpz_class> e6(len);
  for (std::size_t i = 0; i < len; ++i) e6[i] = static_cast<long>(sixth[i]);
  auto e12 = ntt::convolve_exact(e6, e6, len);
  auto e24 = ntt::convolve_exact(e12, e12, len);
  IntegerSeries out(n + 1);
  for (std::size_t i = 0; i < len; ++i) out[i + 1] = std::move(e24[i]);
  return out;
}

IntegerSeries eisenstein(int weight, std::size_t n) {
  if (weight != 4 && weight != 6) {
    throw DomainError("eisenstein supports weights 4 and 6, got " +
                      std::to_string(weight));
  }
  const int p = weight - 1;
  // sigma_5(m) < 2^127 for m up to 2^25.
  std::vector<__int128> sigma(n + 1, 0);
  for (std::size_t d = 1; d <= n; ++d) {
    __int128 dp = 1;
    for (int i = 0; i < p; ++i) dp *= static_cast<__int128>(d);
    for (std::size_t m = d; m <= n; m += d) sigma[m] += dp;
  }
  IntegerSeries out(n + 1);
  out[0] = 1;
  const long scale = weight == 4 ? 240 : -504;
  for (std::size_t m = 1; m <= n; ++m) out[m] = from_int128(sigma[m]) * scale;
  return out;
}

int cusp_dimension(int weight) {
  if (weight < 0 || weight % 2 != 0 || weight == 2) return 0;
  return weight % 12 == 2 ? weight / 12 - 1 : weight / 12;
}

CoefficientTable::CoefficientTable(int weight, std::vector<mpz_class> exact)
    : weight_(weight), quality_(Quality::kExact), exact_(std::move(exact)) {
  normalize();
}

CoefficientTable::CoefficientTable(int weight, std::vector<long double> approx,
                                   long double hecke_t2_eigenvalue)
    : weight_(weight),
      quality_(Quality::kFloating),
      approx_(std::move(approx)),
      t2_eigenvalue_(hecke_t2_eigenvalue) {
  normalize();
}

const std::vector<mpz_class>& CoefficientTable::a() const {
  if (!exact()) throw DomainError("coefficient table is floating point only");
  return exact_;
}

long double CoefficientTable::a_approx(std::size_t n) const {
  return exact() ? to_long_double(exact_[n]) : approx_[n];
}

void CoefficientTable::normalize() {
  const std::size_t size = exact() ? exact_.size() : approx_.size();
  lambda_.assign(size, 0.0);
  if (size < 2) return;
  const long double half = (weight_ - 1) / 2.0L;
  for (std::size_t n = 1; n < size; ++n) {
    lambda_[n] = static_cast<double>(a_approx(n) / std::pow(static_cast<long double>(n), half));
  }
  if (exact()) {
    if (exact_[1] != 1) throw DomainError("eigenform is not normalized: a(1) != 1");
    lambda_[1] = 1.0;
    if (t2_eigenvalue_ == 0.0L && size > 2) t2_eigenvalue_ = to_long_double(exact_[2]);
  }
}

CoefficientTable normalize(CoefficientTable table) {
  table.normalize();
  return table;
}

std::vector<IntegerSeries> miller_basis(int weight, std::size_t n) {
  check_weight(weight);
  const int d = cusp_dimension(weight);
  if (d == 0) return {};
  const auto [a, b] = miller_exponents(weight);
  const IntegerSeries delta = delta_expansion(n);
  const IntegerSeries e4 = eisenstein(4, n);
  const IntegerSeries e6 = eisenstein(6, n);
  const IntegerSeries e4_cubed = e4.pow(3);

  IntegerSeries tail = e4.pow(static_cast<unsigned>(a));
  if (b) tail = tail * e6;
  // g_j = Delta^j * E4^{a + 3(d-j)} * E6^b, built from j = d down to 1.
  std::vector<IntegerSeries> g(d + 1);
  std::vector<IntegerSeries> delta_pow(d + 1);
  delta_pow[1] = delta;
  for (int j = 2; j <= d; ++j) delta_pow[j] = delta_pow[j - 1] * delta;
  IntegerSeries e4_part = tail;
  for (int j = d; j >= 1; --j) {
    g[j] = delta_pow[j] * e4_part;
    if (j > 1) e4_part = e4_part * e4_cubed;
  }
  // g_j = q^j + ...; clear q^i for i > j, i <= d. Pivots are 1.
  for (int j = d; j >= 1; --j) {
    for (int i = j + 1; i <= d; ++i) {
      const mpz_class c = g[j][i];
      if (c != 0) g[j] -= g[i].scaled(c);
    }
  }
  return {g.begin() + 1, g.end()};
}

std::vector<std::vector<mpz_class>> hecke_t2_matrix(int weight,
                                                    std::span<const IntegerSeries> basis) {
  const std::size_t d = basis.size();
  const mpz_class two_pow = mpz_class(1) << (weight - 1);
  std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i].size() <= 2 * d) {
      throw CapacityError("Miller basis too short for the T_2 matrix");
    }
    for (std::size_t j = 1; j <= d; ++j) {
      mpz_class v = basis[i][2 * j];
      if (j % 2 == 0) v += two_pow * basis[i][j / 2];
      m[i][j - 1] = v;
    }
  }
  return m;
}

std::vector<CoefficientTable> eigenforms(int weight, std::size_t n) {
  check_weight(weight);
  if (n < 1) throw DomainError("eigenforms needs N >= 1");
  const int d = cusp_dimension(weight);
  std::vector<CoefficientTable> out;
  if (d == 0) return out;

  if (d == 1) {
    const auto [a, b] = miller_exponents(weight);
    IntegerSeries f = delta_expansion(n);
    if (a) f = f * eisenstein(4, n).pow(static_cast<unsigned>(a));
    if (b) f = f * eisenstein(6, n);
    std::vector<mpz_class> coeffs(f.coefficients().begin(), f.coefficients().end());
    out.emplace_back(weight, std::move(coeffs));
    return out;
  }

  const std::size_t len = std::max<std::size_t>(n, 2 * static_cast<std::size_t>(d));
  const auto basis = miller_basis(weight, len);
  const auto t2 = hecke_t2_matrix(weight, basis);

  // Seed eigenvalues in long double, then refine against the exact
  // characteristic polynomial at kPrecision bits: the Miller basis has large
  // coefficients and the combination below cancels heavily.
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat mt(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) mt(j, i) = to_long_double(t2[i][j]);
  }
  Eigen::EigenSolver<Mat> solver(mt, false);
  if (solver.info() != Eigen::Success) {
    throw DiagonalizationError("T_2 eigen-decomposition failed for weight " +
                               std::to_string(weight));
  }
  const auto values = solver.eigenvalues();
  const long double scale = std::pow(2.0L, (weight - 1) / 2.0L);
  std::vector<long double> seeds;
  for (int i = 0; i < d; ++i) {
    if (std::abs(values[i].imag()) > 1e-9L * scale) {
      throw DiagonalizationError("T_2 has a non-real eigenvalue");
    }
    seeds.push_back(values[i].real());
  }
  std::sort(seeds.begin(), seeds.end());
  for (int i = 0; i + 1 < d; ++i) {
    if (seeds[i + 1] - seeds[i] < 1e-8L * scale) {
      throw DiagonalizationError("T_2 eigenvalues cluster below tolerance for weight " +
                                 std::to_string(weight));
    }
  }

  const auto charpoly = characteristic_polynomial(t2);
  for (long double seed : seeds) {
    const mpf_class lambda = newton_root(charpoly, seed);
    const auto c = null_vector(t2, lambda);
    std::vector<long double> coeffs(n + 1, 0.0L);
    mpf_class acc(0, kPrecision), term(0, kPrecision), entry(0, kPrecision);
    for (std::size_t m = 1; m <= n; ++m) {
      acc = 0;
      for (int i = 0; i < d; ++i) {
        if (basis[i][m] == 0) continue;
        entry = basis[i][m];
        term = c[i] * entry;
        acc += term;
      }
      coeffs[m] = mpf_to_long_double(acc);
    }
    coeffs[1] = 1.0L;
    out.emplace_back(weight, std::move(coeffs), mpf_to_long_double(lambda));
  }
  return out;
}

void write_csv(std::ostream& out, const CoefficientTable& table) {
  out << "n,a_n,lambda_n\n";
  for (std::size_t n = 1; n <= table.max_index(); ++n) {
    out << n << ',';
    if (table.exact()) {
      out << table.a()[n].get_str();
    } else {
      out << format_long_double(table.a_approx(n));
    }
    out << ',' << format_double(table.lambda(n)) << '\n';
  }
}

}  // namespace cusp::coeffs
