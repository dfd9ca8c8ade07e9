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
#include <complex>
#include <numbers>

#include "cusp/arith.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using namespace cusp;
using namespace cusp::arith;

namespace {

// Direct complex exponential sum with brute-force inverses.
std::complex<long double> kloosterman_oracle(int64_t m, int64_t n, int64_t c) {
  if (c == 1) return 1.0L;
  std::complex<long double> s = 0;
  for (int64_t z = 1; z < c; ++z) {
    int64_t zb = -1;
    for (int64_t y = 1; y < c; ++y) {
      if ((z * y) % c == 1) {
        zb = y;
        break;
      }
    }
    if (zb < 0) continue;
    const long double t = 2.0L * std::numbers::pi_v<long double> *
                          static_cast<long double>(mod(m * z + n * zb, c)) / c;
    s += std::complex<long double>(std::cos(t), std::sin(t));
  }
  return s;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(3, 10).value() == 7);
  CHECK(mod_inverse(1, 17).value() == 1);
  CHECK(!mod_inverse(2, 4).has_value());
  CHECK(mod_inverse(-3, 10).value() == 3);
  for (int64_t c = 2; c <= 200; ++c) {
    for (int64_t z = 0; z < c; ++z) {
      const auto inv = mod_inverse(z, c);
      CHECK(inv.has_value() == (gcd(z, c) == 1));
      if (inv) CHECK((z * *inv) % c == 1);
    }
  }
}

TEST_CASE("divisor count and totient") {
  CHECK(divisor_count(1) == 1);
  CHECK(divisor_count(12) == 6);
  CHECK(totient(1) == 1);
  CHECK(totient(36) == 12);
}

TEST_CASE("Kloosterman sums against the complex oracle") {
  CHECK(kloosterman(1, 1, 1) == 1.0);
  CHECK(kloosterman(1, 1, 3) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(kloosterman(1, 1, 0), DomainError);
  for (int64_t c = 1; c <= 60; ++c) {
    for (int64_t m : {-3, 0, 1, 2, 7}) {
      for (int64_t n : {1, 4, 5, -2}) {
        const auto ref = kloosterman_oracle(m, n, c);
        CHECK(std::abs(kloosterman(m, n, c) - static_cast<double>(ref.real())) < 1e-11);
        CHECK(std::abs(static_cast<double>(ref.imag())) < 1e-11);
      }
    }
  }
  // Ramanujan sum: S(m, 0, c) = c_c(m); S(0, 0, c) = phi(c).
  CHECK(kloosterman(0, 0, 36) == doctest::Approx(12.0));
}

TEST_CASE("Kloosterman symmetry, realness and Weil bound") {
  for (int64_t c : {2, 9, 97, 360, 1001, 4096, 9973}) {
    for (int64_t m : {1, 3, 12}) {
      for (int64_t n : {1, 5, 30}) {
        CHECK(kloosterman(m, n, c) == kloosterman(n, m, c));
        const auto z = kloosterman_complex(m, n, c);
        CHECK(std::abs(z.imag()) <= 1e-9 * c);
        CHECK(std::abs(z.real()) <= weil_bound(m, n, c) + 1e-9);
      }
    }
  }
}

TEST_CASE("twisted multiplicativity") {
  for (auto [c1, c2] : {std::pair<int64_t, int64_t>{3, 5}, {7, 16}, {25, 9}, {11, 13}}) {
    for (int64_t m : {1, 2, 6}) {
      for (int64_t n : {1, 3, 10}) {
        const int64_t i2 = *mod_inverse(c2, c1), i1 = *mod_inverse(c1, c2);
        const double lhs = kloosterman(m, n, c1 * c2);
        const double rhs = kloosterman(m * i2, n * i2, c1) * kloosterman(m * i1, n * i1, c2);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("cache returns the direct values") {
  KloostermanCache cache;
  for (int64_t c = 1; c < 40; ++c) {
    CHECK(cache.get(3, 8, c) == kloosterman(3, 8, c));
    CHECK(cache.get(8, 3, c) == kloosterman(3, 8, c));
  }
}

TEST_CASE("quadratic congruence counts") {
  CHECK(count_quadratic_congruence(4, 1) == 2);
  CHECK(count_quadratic_congruence(1, 1) == 1);
  CHECK(count_quadratic_congruence(1, -1) == 1);
  for (int64_t c = 1; c <= 500; ++c) {
    for (int eta : {1, -1}) {
      CHECK(count_quadratic_congruence(c, eta) <= std::sqrt(static_cast<double>(c)) + 1e-12);
    }
  }
}

TEST_CASE("lattice solution counts") {
  CHECK(count_lattice_solutions(1, 1, 1, 0.5) == 1);
  CHECK(count_lattice_solutions(1, 1, 1, 0.5) <= lattice_solution_bound(1, 1, 1, 0.5));
  const int64_t fixture = count_lattice_solutions(2, 3, 1, 6);
  CHECK(fixture == 8);
  CHECK(fixture == count_lattice_solutions(3, 2, 1, 6));
  CHECK(fixture <= lattice_solution_bound(2, 3, 1, 6));
  // tau >= q / 2: every (m, n) pair is a solution when c1 = c2 = d = 1.
  CHECK(count_lattice_solutions(1, 1, 1, 2) == 25);
  CHECK(lattice_solution_bound(1, 1, 1, 2) == 15);
  CHECK(lattice_solution_bound_corrected(1, 1, 1, 2) == 25);
  CHECK_THROWS_AS(count_lattice_solutions(2, 4, 1, 1), DomainError);
  CHECK_THROWS_AS(count_lattice_solutions(999, 1000, 10, 1, 1000), CapacityError);
}

}
