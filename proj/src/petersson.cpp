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

#include "cusp/petersson.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cusp/arith.hpp"
#include "cusp/bessel.hpp"
#include "cusp/coeffs.hpp"
#include "cusp/error.hpp"
#include "cusp/parallel.hpp"
#include "cusp/simd/kernels.hpp"

namespace cusp::petersson {

namespace {

constexpr double kMaxCondition = 1e10;

void check_args(int64_t m, int64_t n, int k) {
  if (m < 1 || n < 1) throw DomainError("Petersson indices must be positive");
  if (k < 12 || k % 2 != 0) {
    throw DomainError("weight must be even and >= 12, got " + std::to_string(k));
  }
}

double i_power(int k) { return (k / 2) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

long geometric_cutoff(int64_t m, int64_t n, int k, double accuracy) {
  check_args(m, n, k);
  const double y = 4.0 * std::numbers::pi * std::sqrt(static_cast<double>(m) * n);
  return std::max(1L, bessel::kloosterman_bessel_tail_cutoff(k - 1, y, accuracy));
}

double geometric_side(int64_t m, int64_t n, int k, double accuracy, long c_cap) {
  const long cutoff = geometric_cutoff(m, n, k, accuracy);
  if (cutoff > c_cap) {
    throw AccuracyError("Petersson c-sum needs " + std::to_string(cutoff) +
                        " terms, cap is " + std::to_string(c_cap));
  }
  const double y = 4.0 * std::numbers::pi * std::sqrt(static_cast<double>(m) * n);
  std::vector<double> terms(cutoff);
  parallel_for(static_cast<std::size_t>(cutoff), [&](std::size_t i) {
    const int64_t c = static_cast<int64_t>(i) + 1;
    const double j = bessel::bessel_j(k - 1, y / c);
    terms[i] = j == 0.0 ? 0.0 : arith::kloosterman(m, n, c) / c * j;
  });
  const double sum = simd::compensated_sum(terms);
  return delta(m, n) + 2.0 * std::numbers::pi * i_power(k) * sum;
}

HarmonicWeight harmonic_weights(int k, int pair_cap) {
  if (pair_cap < 1) throw DomainError("pair cap must be >= 1");
  const int dim = coeffs::cusp_dimension(k);
  if (dim == 0) throw DomainError("S_" + std::to_string(k) + " is zero");
  const auto forms = coeffs::eigenforms(k, static_cast<std::size_t>(pair_cap));

  std::vector<std::pair<int, int>> pairs;
  for (int m = 1; m <= pair_cap; ++m) {
    for (int n = m; n <= pair_cap; ++n) pairs.emplace_back(m, n);
  }
  Eigen::MatrixXd a(pairs.size(), dim);
  Eigen::VectorXd b(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto [m, n] = pairs[r];
    for (int f = 0; f < dim; ++f) a(r, f) = forms[f].lambda(m) * forms[f].lambda(n);
    b(r) = geometric_side(m, n, k);
  }
  if (static_cast<int>(pairs.size()) < dim) {
    throw ConditioningError("pair cap " + std::to_string(pair_cap) + " gives fewer equations than dim " +
                            std::to_string(dim));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double condition = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : INFINITY;
  if (!(condition <= kMaxCondition)) {
    throw ConditioningError("harmonic weight system for k = " + std::to_string(k) +
                            " has condition number " + std::to_string(condition));
  }
  const Eigen::VectorXd omega = svd.solve(b);

  HarmonicWeight out;
  out.weight = k;
  out.omega.assign(omega.data(), omega.data() + omega.size());
  out.residual = (a * omega - b).cwiseAbs().maxCoeff();
  out.condition = condition;
  return out;
}

int default_fit_cap(int k) {
  const int dim = coeffs::cusp_dimension(k);
  return dim <= 1 ? 1 : dim + 1;
}

double sym_square_L1(int k, std::size_t f, int pair_cap) {
  const auto hw = harmonic_weights(k, pair_cap > 0 ? pair_cap : default_fit_cap(k));
  if (f >= hw.omega.size()) throw DomainError("eigenform index out of range");
  return 2.0 * std::numbers::pi * std::numbers::pi / ((k - 1) * hw.omega[f]);
}

std::vector<ResidualRow> petersson_table(int k, int mn_cap) {
  if (mn_cap < 1) throw DomainError("mn cap must be >= 1");
  const int fit_cap = default_fit_cap(k);
  const auto hw = harmonic_weights(k, fit_cap);
  const auto forms =
      coeffs::eigenforms(k, static_cast<std::size_t>(std::max(mn_cap, fit_cap)));
  std::vector<ResidualRow> rows;
  for (int m = 1; m <= mn_cap; ++m) {
    for (int n = 1; n <= mn_cap; ++n) {
      ResidualRow row;
      row.m = m;
      row.n = n;
      for (std::size_t f = 0; f < forms.size(); ++f) {
        row.spectral += hw.omega[f] * forms[f].lambda(m) * forms[f].lambda(n);
      }
      row.geometric = geometric_side(m, n, k);
      row.residual = std::abs(row.spectral - row.geometric);
      rows.push_back(row);
    }
  }
  return rows;
}

double verify_petersson(int k, int mn_cap) {
  double worst = 0.0;
  for (const auto& row : petersson_table(k, mn_cap)) worst = std::max(worst, row.residual);
  return worst;
}

}  // namespace cusp::petersson
