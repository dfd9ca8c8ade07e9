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
#include <vector>

#include "cusp/coeffs.hpp"
#include "cusp/error.hpp"
#include "cusp/moments.hpp"
#include "cusp/parallel.hpp"
#include "cusp/petersson.hpp"
#include "cusp/resonance.hpp"
#include "doctest.h"

using namespace cusp;
using namespace cusp::moments;

namespace {

MomentWindow window(double k1, double l1, double k2, double l2, double x, double a, double b) {
  MomentWindow w;
  w.k1 = k1;
  w.l1 = l1;
  w.k2 = k2;
  w.l2 = l2;
  w.x = x;
  w.alpha = a;
  w.beta = b;
  return w;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("window weights") {
  CHECK(window_weights(18, 4) == std::vector<int>{16, 18, 20});
  CHECK(window_weights(18, 2) == std::vector<int>{18});
  CHECK(window_weights(13, 0.5).empty());
}

TEST_CASE("spectral equals geometric") {
  for (double x : {16.0, 32.0}) {
    for (double a : {1.0, 2.5}) {
      for (double b : {0.25, 0.5, 1.0}) {
        const auto r = moment_geometric(window(18, 4, 18, 4, x, a, b), kDefaultAccuracy, true);
        INFO("X=" << x << " alpha=" << a << " beta=" << b);
        CHECK(r.spectral > 0.0);
        CHECK(r.relative_residual() <= 1e-6);
        CHECK(r.d00.imag() == 0.0);
        CHECK(std::abs(r.d11.imag()) <= 1e-8 * std::abs(r.d11));
      }
    }
  }
}

TEST_CASE("identity across unequal windows, dim 0 and dim 2 weights") {
  const auto r = moment_geometric(window(14, 4, 24, 4, 20, 2.5, 0.25), kDefaultAccuracy, true);
  CHECK(r.relative_residual() <= 1e-6);
}

TEST_CASE("empty windows") {
  CHECK(moment_spectral(window(8, 2, 18, 4, 32, 1, 0.5)) == 0.0);
  const auto r = moment_geometric(window(13, 0.5, 18, 4, 32, 1, 0.5));
  CHECK(r.total() == std::complex<double>(0.0, 0.0));
  CHECK_THROWS_AS(moment_spectral(window(36, 2, 18, 4, 16, 1, 0.5)), CapacityError);
  CHECK_THROWS_AS(moment_geometric(window(8, 2, 18, 4, 32, 1, 0.5)), AccuracyError);
  CHECK_THROWS_AS(moment_geometric(window(3, 2, 18, 4, 8, 1, 0.5)), DomainError);
}

TEST_CASE("single-term lower bound") {
  // Window K = 18, L = 2 holds only k = 18 (dim 1, g0(0) = 1).
  const auto w = window(18, 2, 18, 2, 32, 1, 0.5);
  const auto f = coeffs::eigenforms(18, 64).at(0);
  const double omega = petersson::harmonic_weights(18, 1).omega[0];
  const double s = std::norm(resonance::resonance_sum_pair(f, f, {1, 0.5, 32}));
  const double spectral = moment_spectral(w);
  CHECK(spectral >= 18.0 * 18.0 * omega * omega * s * (1 - 1e-12));
  CHECK(spectral == doctest::Approx(18.0 * 18.0 * omega * omega * s).epsilon(1e-12));
}

TEST_CASE("D01 and D10 swap with the windows") {
  const auto a = moment_geometric(window(16, 3, 22, 4, 24, 1, 0.5));
  const auto b = moment_geometric(window(22, 4, 16, 3, 24, 1, 0.5));
  CHECK(a.d01 == b.d10);
  CHECK(a.d10 == b.d01);
  CHECK(a.d00 == b.d00);
}

TEST_CASE("D00 against the trivial scale") {
  for (auto [k, l, x] : {std::tuple{18.0, 4.0, 16.0}, {24.0, 3.0, 32.0}, {30.0, 5.0, 64.0}}) {
    const auto r = moment_geometric(window(k, l, k, l, x, 1, 0.5), 10.0);
    const double ratio = r.d00.real() / (k * l * k * l * x);
    CHECK(ratio > 0.0);
    CHECK(ratio < 1.0);
  }
}

TEST_CASE("reproducible across thread counts") {
  const auto w = window(18, 4, 20, 3, 24, 2.5, 0.25);
  set_thread_count(1);
  const auto one = moment_geometric(w);
  set_thread_count(3);
  const auto three = moment_geometric(w);
  set_thread_count(0);
  CHECK(one.total() == three.total());
}

TEST_CASE("regimes") {
  CHECK(parse_regime("large") == Regime::kLarge);
  CHECK_THROWS_AS(parse_regime("1.2"), ValidationError);
  const auto large = window(32, 4, 16, 2, 64, 1, 0.5);
  CHECK_NOTHROW(check_regime(large, Regime::kLarge));
  CHECK_THROWS_AS(check_regime(window(32, 4, 12, 2, 64, 1, 0.5), Regime::kLarge), RegimeError);
  try {
    check_regime(window(32, 4, 12, 2, 64, 1, 0.5), Regime::kLarge);
  } catch (const RegimeError& e) {
    CHECK(std::string(e.what()).find("K2 >= X^(1/2+e)") != std::string::npos);
  }
  CHECK_THROWS_AS(check_regime(window(18, 2, 18, 2, 32, 1, 1.0), Regime::kEqual), RegimeError);
  CHECK_NOTHROW(check_regime(window(18, 2, 18, 2, 32, 1, 0.5), Regime::kEqual));
  CHECK_NOTHROW(check_regime(window(16, 2, 16, 2, 64, 1, 1.0), Regime::kBetaOne));
  CHECK_NOTHROW(check_regime(window(32, 4, 4, 2, 16, 1, 0.5), Regime::kK2Small));
}

TEST_CASE("theorem bound report") {
  const std::vector<double> xs = {16, 32, 64};
  const auto rows = theorem_bound_report(window(32, 4, 16, 2, 64, 1, 0.5), Regime::kLarge, xs);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio < 1.0);
    CHECK(r.bound == doctest::Approx(32.0 * 4 * 16 * 2 * std::pow(r.x, 1.1)));
  }
  const auto eq = theorem_bound_report(window(18, 2, 18, 2, 32, 1, 0.5), Regime::kEqual,
                                       std::vector<double>{32});
  CHECK(eq.size() == 1);
}

}  // TEST_SUITE
