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

// q-expansions of level-one holomorphic Hecke eigenforms.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace cusp::coeffs {

/// Default cap on the number of coefficients a single series may hold.
inline constexpr std::size_t kDefaultMaxLength = std::size_t{1} << 21;

/// Exact power series truncated at a fixed length (coefficient of q^i at i).
class IntegerSeries {
 public:
  IntegerSeries() = default;
  explicit IntegerSeries(std::size_t length) : coeffs_(length) {}
  explicit IntegerSeries(std::vector<mpz_class> coeffs)
      : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
  mpz_class& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const mpz_class> coefficients() const { return coeffs_; }

  /// Truncated product; the result has the common length of both operands
  /// (the shorter one when they differ). NTT + CRT path.
  IntegerSeries operator*(const IntegerSeries& other) const;
  IntegerSeries operator+(const IntegerSeries& other) const;
  IntegerSeries operator-(const IntegerSeries& other) const;
  IntegerSeries& operator-=(const IntegerSeries& other);
  IntegerSeries scaled(const mpz_class& factor) const;

  IntegerSeries pow(unsigned exponent) const;

  friend bool operator==(const IntegerSeries&, const IntegerSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

/// O(N^2) product used as an independent oracle in tests.
IntegerSeries multiply_schoolbook(const IntegerSeries& a, const IntegerSeries& b);

/// Delta = q prod (1 - q^n)^24 with coefficients of q^0..q^N (length N+1).
IntegerSeries delta_expansion(std::size_t n,
                              std::size_t max_length = kDefaultMaxLength);

/// E_4 or E_6 through q^N (length N+1).
IntegerSeries eisenstein(int weight, std::size_t n);

/// dim S_k(SL2(Z)) for even k >= 0; 0 for odd or negative k.
int cusp_dimension(int weight);

enum class Quality {
  kExact,     // integer coefficients, exact
  kFloating,  // eigenvector computed in floating point
};

/// Fourier coefficients a(1..N) and normalized lambda(n) = a(n)/n^{(k-1)/2}
/// of one normalized Hecke eigenform. Index 0 is unused.
class CoefficientTable {
 public:
  CoefficientTable(int weight, std::vector<mpz_class> exact);
  CoefficientTable(int weight, std::vector<long double> approx,
                   long double hecke_t2_eigenvalue);

  int weight() const { return weight_; }
  std::size_t max_index() const { return lambda_.empty() ? 0 : lambda_.size() - 1; }
  Quality quality() const { return quality_; }
  bool exact() const { return quality_ == Quality::kExact; }

  /// Exact coefficients; throws DomainError for floating tables.
  const std::vector<mpz_class>& a() const;
  /// a(n) as long double (exact tables convert).
  long double a_approx(std::size_t n) const;

  std::span<const double> lambda() const { return lambda_; }
  double lambda(std::size_t n) const { return lambda_[n]; }
  long double t2_eigenvalue() const { return t2_eigenvalue_; }

  /// Recomputes lambda from the stored coefficients.
  void normalize();

 private:
  int weight_;
  Quality quality_;
  std::vector<mpz_class> exact_;
  std::vector<long double> approx_;
  std::vector<double> lambda_;
  long double t2_eigenvalue_ = 0.0L;
};

/// Normalized eigenforms of weight k with coefficients through q^N.
/// dim 1: exact products Delta * E4^a * E6^b. dim >= 2: Miller basis, T_2
/// matrix, floating diagonalization.
std::vector<CoefficientTable> eigenforms(int weight, std::size_t n);

/// Returns table with lambda filled (lambda(1) = 1 for a(1) = 1).
CoefficientTable normalize(CoefficientTable table);

/// Exact Miller basis f_i = q^i + O(q^{d+1}), i = 1..d, through q^N.
std::vector<IntegerSeries> miller_basis(int weight, std::size_t n);

/// Integer matrix of T_2 on the Miller basis: row i holds the coefficients
/// of T_2 f_i in the basis.
std::vector<std::vector<mpz_class>> hecke_t2_matrix(int weight,
                                                    std::span<const IntegerSeries> basis);

/// CSV with columns n,a_n,lambda_n (integers decimal, floats 17 digits).
void write_csv(std::ostream& out, const CoefficientTable& table);

}  // namespace cusp::coeffs
