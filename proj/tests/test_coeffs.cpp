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
#include <sstream>

#include "cusp/coeffs.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using namespace cusp;
using namespace cusp::coeffs;

namespace {

// prod_{m>=1} (1 - q^m)^24 by repeated multiplication with (1 - q^m).
IntegerSeries delta_oracle(std::size_t n) {
  std::vector<mpz_class> p(n, 0);
  p[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = n - 1; i >= m; --i) p[i] -= p[i - m];
    }
  }
  IntegerSeries out(n + 1);
  for (std::size_t i = 0; i < n; ++i) out[i + 1] = p[i];
  return out;
}

mpz_class sigma(unsigned long n, unsigned power) {
  mpz_class s = 0;
  for (unsigned long d = 1; d <= n; ++d) {
    if (n % d == 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), d, power);
      s += t;
    }
  }
  return s;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t gcd(std::size_t a, std::size_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace

TEST_SUITE("coeffs") {

TEST_CASE("delta expansion small values") {
  CHECK(delta_expansion(1)[1] == 1);
  const auto d = delta_expansion(5);
  CHECK(d[0] == 0);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[4] == -1472);
  CHECK(d[5] == 4830);
  CHECK_THROWS_AS(delta_expansion(0), DomainError);
  CHECK_THROWS_AS(delta_expansion(100, 50), CapacityError);
}

TEST_CASE("delta expansion matches the schoolbook oracle to N = 2000") {
  CHECK(delta_expansion(2000) == delta_oracle(2000));
}

TEST_CASE("NTT product matches schoolbook product") {
  const auto e4 = eisenstein(4, 300);
  const auto e6 = eisenstein(6, 300);
  CHECK(e4 * e6 == multiply_schoolbook(e4, e6));
  CHECK(e4.pow(3) == multiply_schoolbook(multiply_schoolbook(e4, e4), e4));
}

TEST_CASE("eisenstein series") {
  const auto e4 = eisenstein(4, 30);
  const auto e6 = eisenstein(6, 30);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);
  CHECK(e6[1] == -504);
  for (unsigned long n = 1; n <= 30; ++n) {
    CHECK(e4[n] == 240 * sigma(n, 3));
    CHECK(e6[n] == -504 * sigma(n, 5));
  }
  CHECK_THROWS_AS(eisenstein(8, 4), DomainError);
  // E4^3 - E6^2 = 1728 Delta
  const auto lhs = e4.pow(3) - e6 * e6;
  const auto delta = delta_expansion(30);
  for (std::size_t n = 0; n <= 30; ++n) CHECK(lhs[n] == 1728 * delta[n]);
}

TEST_CASE("cusp dimensions") {
  CHECK(cusp_dimension(12) == 1);
  CHECK(cusp_dimension(14) == 0);
  CHECK(cusp_dimension(24) == 2);
  CHECK(cusp_dimension(26) == 1);
  CHECK(cusp_dimension(38) == 2);
  CHECK(cusp_dimension(8) == 0);
  // Independent count: monomials E4^a E6^b of weight k minus the constant.
  for (int k = 12; k <= 60; k += 2) {
    int monomials = 0;
    for (int a = 0; 4 * a <= k; ++a) {
      if ((k - 4 * a) % 6 == 0) ++monomials;
    }
    CHECK(cusp_dimension(k) == monomials - 1);
  }
}

TEST_CASE("eigenform counts and weights") {
  CHECK(eigenforms(14, 100).empty());
  CHECK_THROWS_AS(eigenforms(13, 10), DomainError);
  CHECK_THROWS_AS(eigenforms(10, 10), DomainError);
  for (int k = 12; k <= 40; k += 2) {
    CHECK(static_cast<int>(eigenforms(k, 30).size()) == cusp_dimension(k));
  }
}

TEST_CASE("weight 12 table and normalization") {
  const auto forms = eigenforms(12, 100);
  REQUIRE(forms.size() == 1);
  const auto& f = forms[0];
  CHECK(f.exact());
  CHECK(f.a()[2] == -24);
  CHECK(f.lambda(1) == 1.0);
  CHECK(f.lambda(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK(f.lambda(2) == doctest::Approx(-0.530330).epsilon(1e-6));
  CHECK(f.lambda(4) == doctest::Approx(f.lambda(2) * f.lambda(2) - 1.0).epsilon(1e-13));
}

TEST_CASE("weight 24 eigenvalues are the roots of the T_2 characteristic polynomial") {
  const auto basis = miller_basis(24, 40);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0][1] == 1);
  CHECK(basis[0][2] == 0);
  CHECK(basis[1][1] == 0);
  CHECK(basis[1][2] == 1);
  // Brute force T_2 on f_i: coefficient list of T_2 f_i, read at q^1, q^2.
  mpz_class m[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      mpz_class v = basis[i][2 * j];
      if (j == 2) v += (mpz_class(1) << 23) * basis[i][1];
      m[i][j - 1] = v;
    }
  }
  const mpz_class tr = m[0][0] + m[1][1];
  const mpz_class det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const long double t = tr.get_d(), dt = det.get_d();
  const long double disc = std::sqrt(t * t - 4 * dt);
  const long double r1 = (t - disc) / 2, r2 = (t + disc) / 2;
  const auto forms = eigenforms(24, 40);
  REQUIRE(forms.size() == 2);
  CHECK(!forms[0].exact());
  CHECK(static_cast<double>(forms[0].t2_eigenvalue() / r1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(static_cast<double>(forms[1].t2_eigenvalue() / r2) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& f : forms) {
    CHECK(static_cast<double>(f.a_approx(2) / f.t2_eigenvalue()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Hecke relations and Deligne bound") {
  for (int k : {12, 16, 24, 28, 36}) {
    const std::size_t n = 2000;
    for (const auto& f : eigenforms(k, n)) {
      for (std::size_t p = 2; p <= n; ++p) {
        if (is_prime(p)) CHECK(std::abs(f.lambda(p)) <= 2.0);
      }
      double worst = 0.0;
      for (std::size_t a = 2; a <= 60; ++a) {
        for (std::size_t b = a + 1; a * b <= n; ++b) {
          if (gcd(a, b) != 1) continue;
          worst = std::max(worst, std::abs(f.lambda(a * b) - f.lambda(a) * f.lambda(b)));
        }
      }
      CHECK(worst <= 1e-10);
      for (std::size_t p : {2u, 3u, 5u, 7u}) {
        for (std::size_t q = p; q * p <= n; q *= p) {
          const double rec = f.lambda(p) * f.lambda(q) - f.lambda(q / p);
          CHECK(std::abs(f.lambda(q * p) - rec) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("exact multiplicativity for dimension one weights") {
  const auto f = eigenforms(16, 500)[0];
  const auto& a = f.a();
  for (std::size_t m = 2; m <= 22; ++m) {
    for (std::size_t n = m + 1; m * n <= 500; ++n) {
      if (gcd(m, n) == 1) CHECK(a[m * n] == a[m] * a[n]);
    }
  }
}

TEST_CASE("csv export") {
  const auto f = eigenforms(12, 3)[0];
  std::ostringstream os;
  write_csv(os, f);
  const std::string s = os.str();
  CHECK(s.rfind("n,a_n,lambda_n\n1,1,1.0000000000000000e+00\n2,-24,", 0) == 0);
}

}
