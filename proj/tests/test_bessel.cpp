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
#include <random>

#include "cusp/bessel.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using namespace cusp;
using namespace cusp::bessel;

TEST_SUITE("bessel") {

TEST_CASE("special values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(5, 0.0) == 0.0);
  CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
  const double tiny = bessel_j(99, 10.0);
  const double bound = std::exp(99 * std::log(5.0) - std::lgamma(100.0));
  CHECK(std::abs(tiny) <= bound);
  CHECK(std::abs(tiny) < 1e-80);
  CHECK_THROWS_AS(bessel_j(kMaxOrder + 1, 1.0), CapacityError);
  CHECK_THROWS_AS(bessel_j(1, std::nan("")), DomainError);
  CHECK_THROWS_AS(bessel_j(1, -1.0), DomainError);
}

TEST_CASE("oracle agreement at named points") {
  CHECK(bessel_j_oracle(0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(bessel_j_oracle(1, 1.0) - bessel_j(1, 1.0)) < 1e-9);
  const double a = bessel_j(21, 1608.0), b = bessel_j_oracle(21, 1608.0);
  CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
}

TEST_CASE("regime evaluators overlap") {
  for (int nu : {0, 1, 2, 5, 9}) {
    const double x = kHankelBase + kHankelScale * nu * nu;
    CHECK(std::abs(bessel_j_hankel(nu, x) - bessel_j_miller(nu, x)) < 1e-13);
  }
  for (int nu : {0, 3, 10, 40, 150}) {
    const double x = std::max(kSeriesX, nu / kSeriesOrderRatio);
    const double s = bessel_j_series(nu, x), m = bessel_j_miller(nu, x);
    CHECK(std::abs(s - m) <= 1e-12 * std::max(1e-300, std::abs(m)) + 1e-14);
  }
}

TEST_CASE("range evaluation matches single orders") {
  for (double x : {0.01, 1.0, 33.3, 250.0, 4000.0}) {
    const auto all = bessel_j_range(120, x);
    for (int nu = 0; nu <= 120; nu += 7) {
      const double single = bessel_j_miller(nu, x);
      CHECK(std::abs(all[nu] - single) <= 1e-14 * std::max(1.0, std::abs(single)) +
                                               1e-13 * std::abs(single));
    }
  }
}

TEST_CASE("cross validation, recurrence and normalization on a grid") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> order(0, 200);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_cross = 0, worst_rec = 0;
  for (int i = 0; i < 500; ++i) {
    const int nu = order(rng);
    const double u = unit(rng);
    double x = i % 2 ? 5000.0 * u : std::min(5000.0, nu * (0.3 + 1.4 * u) + 1e-3);
    const double j = bessel_j(nu, x);
    worst_cross = std::max(worst_cross, std::abs(j - bessel_j_oracle(nu, x)) / std::max(1.0, std::abs(j)));
    if (x >= 1.0 && nu >= 1) {
      const double res = bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - (2.0 * nu / x) * j;
      worst_rec = std::max(worst_rec, std::abs(res));
    }
  }
  CHECK(worst_cross <= 1e-8);
  CHECK(worst_rec <= 1e-8);
  for (double x : {0.5, 7.0, 99.0, 640.0, 2000.0}) {
    const int kmax = static_cast<int>(x) + 50;
    double s = bessel_j(0, x);
    for (int k = 1; k <= kmax; ++k) s += 2.0 * bessel_j(2 * k, x);
    CHECK(std::abs(s - 1.0) <= 1e-8);
  }
}

TEST_CASE("truncation cutoff") {
  const auto c = truncation_cutoff(21, 18.0, 100.0);
  // (x*/2)^21 / 21! = 1e-18, solved by bisection on the log.
  double lo = 0.0, hi = 100.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = 21 * std::log(mid / 2) - std::lgamma(22.0) + 18 * std::log(10.0);
    (v < 0 ? lo : hi) = mid;
  }
  CHECK(c.x_star == doctest::Approx(lo).epsilon(1e-12));
  CHECK(c.c_min == doctest::Approx(100.0 / lo).epsilon(1e-12));
  CHECK(std::abs(bessel_j(21, c.x_star)) < 1e-18);
  CHECK(truncation_cutoff(1, 300.0, 1.0).x_star < 1e-290);
  double prev = 0;
  for (int nu = 2; nu < 200; nu += 10) {
    const double x = truncation_cutoff(nu, 14.0, 1.0).x_star;
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("Kloosterman-Bessel tail cutoff") {
  const long c = kloosterman_bessel_tail_cutoff(11, 4 * M_PI * 20, 14.0);
  CHECK(kloosterman_bessel_tail_bound(11, 4 * M_PI * 20, c) < 1e-14);
  if (c > 1) CHECK(kloosterman_bessel_tail_bound(11, 4 * M_PI * 20, c - 1) >= 1e-14);
}

}
