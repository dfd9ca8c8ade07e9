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

// Gauss-Legendre rules and adaptive Gauss-Kronrod (7/15) integration.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cusp/error.hpp"

namespace cusp::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed once per n (Newton in long double).
const Rule& gauss_legendre(int n);

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T, class F>
std::pair<T, double> kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const T f1 = f(c - dx), f2 = f(c + dx);
    kron += (f1 + f2) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  return {kron * h, magnitude((kron - gauss) * h)};
}

}  // namespace detail

/// Adaptive bisection with a 15-point Kronrod rule. An interval is accepted
/// when its error estimate is below abs_tol scaled by its share of [a, b].
/// Intervals are summed left to right, so results are deterministic.
template <class T, class F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
  Result<T> out;
  if (!(b > a)) return out;
  const double total = b - a;
  struct Item {
    double a, b;
    int depth;
  };
  std::vector<Item> stack{{a, b, 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    auto [val, err] = detail::kronrod15<T>(f, it.a, it.b);
    out.evaluations += 15;
    const double allowed = abs_tol * (it.b - it.a) / total;
    if (err <= allowed || err < 1e-300) {
      out.value += val;
      out.error += err;
      continue;
    }
    if (it.depth >= max_depth) {
      throw AccuracyError("adaptive quadrature did not converge on [" +
                          std::to_string(it.a) + ", " + std::to_string(it.b) + "]");
    }
    const double mid = 0.5 * (it.a + it.b);
    // Right half first so the left half is processed next (left-to-right sum).
    stack.push_back({mid, it.b, it.depth + 1});
    stack.push_back({it.a, mid, it.depth + 1});
  }
  return out;
}

/// integrate() over consecutive panels [x_i, x_{i+1}] with a global tolerance.
template <class T, class F>
Result<T> integrate_panels(F&& f, const std::vector<double>& breaks, double abs_tol,
                           int max_depth = 40) {
  Result<T> out;
  if (breaks.size() < 2) return out;
  const double total = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double share = (breaks[i + 1] - breaks[i]) / total;
    auto r = integrate<T>(f, breaks[i], breaks[i + 1], abs_tol * share, max_depth);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  }
  return out;
}

/// Fixed Gauss-Legendre rule on [a, b].
template <class T, class F>
T integrate_fixed(F&& f, double a, double b, const Rule& rule) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T s{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += f(c + h * rule.nodes[i]) * rule.weights[i];
  return s * h;
}

}  // namespace cusp::quad
