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

#include "cusp/moments.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <cmath>
#include <numbers>
#include <string>

#include "cusp/arith.hpp"
#include "cusp/bessel.hpp"
#include "cusp/coeffs.hpp"
#include "cusp/error.hpp"
#include "cusp/parallel.hpp"
#include "cusp/petersson.hpp"
#include "cusp/resonance.hpp"
#include "cusp/simd/kernels.hpp"
#include "cusp/weights.hpp"

namespace cusp::moments {

void MomentWindow::validate() const {
  if (!(k1 > 0 && l1 > 0 && k2 > 0 && l2 > 0)) throw DomainError("K and L must be positive");
  if (!(x > 0)) throw DomainError("X must be positive");
  if (!(alpha != 0.0)) throw DomainError("alpha must be nonzero");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
}

std::vector<int> window_weights(double k, double l) {
  std::vector<int> out;
  const int lo = static_cast<int>(std::floor(k - l));
  const int hi = static_cast<int>(std::ceil(k + l));
  for (int kk = std::max(2, lo + (lo & 1)); kk <= hi; kk += 2) {
    if (weights::g0((kk - k) / l) > 0.0) out.push_back(kk);
  }
  return out;
}

namespace {

struct WeightedForms {
  std::vector<coeffs::CoefficientTable> forms;
  std::vector<double> scale;  // g0((k - K)/L) * omega_f
};

WeightedForms weighted_forms(double k, double l, int dim_cap, std::size_t n) {
  WeightedForms out;
  for (int kk : window_weights(k, l)) {
    const int dim = coeffs::cusp_dimension(kk);
    if (dim == 0) continue;
    if (dim > dim_cap) {
      throw CapacityError("weight " + std::to_string(kk) + " has dim " + std::to_string(dim) +
                          " > dim cap " + std::to_string(dim_cap));
    }
    const auto hw = petersson::harmonic_weights(kk, petersson::default_fit_cap(kk));
    auto forms = coeffs::eigenforms(kk, n);
    const double g = weights::g0((kk - k) / l);
    for (int f = 0; f < dim; ++f) {
      out.forms.push_back(std::move(forms[f]));
      out.scale.push_back(g * hw.omega[f]);
    }
  }
  return out;
}

double g0_mass(double k, double l) {
  double s = 0.0;
  for (int kk : window_weights(k, l)) s += weights::g0((kk - k) / l);
  return s;
}

void check_petersson_weights(double k, double l) {
  for (int kk : window_weights(k, l)) {
    if (kk < 4) throw DomainError("window reaches weight " + std::to_string(kk) + " < 4");
  }
}

}  // namespace

double moment_spectral(const MomentWindow& w) {
  w.validate();
  const auto support = resonance::support(w.x);
  const std::size_t n = std::max<long>(support.last, 1);
  const auto a = weighted_forms(w.k1, w.l1, w.dim_cap, n);
  const auto b = weighted_forms(w.k2, w.l2, w.dim_cap, n);
  std::vector<double> terms(a.forms.size() * b.forms.size());
  parallel_for(terms.size(), [&](std::size_t idx) {
    const std::size_t i = idx / b.forms.size(), j = idx % b.forms.size();
    const auto s = resonance::resonance_sum_pair(a.forms[i], b.forms[j],
                                                 {w.alpha, w.beta, w.x});
    terms[idx] = a.scale[i] * b.scale[j] * std::norm(s);
  });
  return w.k1 * w.k2 * simd::compensated_sum(terms);
}

namespace {

// Q(m, n) = sum_k g0((k - K)/L) 2 pi i^k sum_c S(m,n,c)/c J_{k-1}(4 pi sqrt(mn)/c)
// for one window, k over its even weights.
struct WindowSeries {
  std::vector<int> ks;
  std::vector<double> coef;  // g0 i^k
  int nu_max = 0;
};

WindowSeries window_series(double k, double l) {
  WindowSeries s;
  s.ks = window_weights(k, l);
  for (int kk : s.ks) {
    s.coef.push_back(weights::g0((kk - k) / l) * ((kk / 2) % 2 == 0 ? 1.0 : -1.0));
    s.nu_max = std::max(s.nu_max, kk - 1);
  }
  return s;
}

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

long moduli_needed(const WindowSeries& s, double y, double accuracy) {
  long c = 1;
  for (int kk : s.ks) c = std::max(c, bessel::kloosterman_bessel_tail_cutoff(kk - 1, y, accuracy));
  return c;
}

}  // namespace

MomentBreakdown moment_geometric(const MomentWindow& w, double accuracy, bool with_spectral,
                                 long max_moduli) {
  w.validate();
  check_petersson_weights(w.k1, w.l1);
  check_petersson_weights(w.k2, w.l2);
  const auto start = std::chrono::steady_clock::now();
  MomentBreakdown out;

  const auto support = resonance::support(w.x);
  std::vector<long> ns;
  std::vector<double> cut;
  for (long n = support.first; n <= support.last; ++n) {
    const double p = weights::phi(n / w.x);
    if (p == 0.0) continue;
    ns.push_back(n);
    cut.push_back(p);
  }
  const WindowSeries s1 = window_series(w.k1, w.l1);
  const WindowSeries s2 = window_series(w.k2, w.l2);
  if (ns.empty() || s1.ks.empty() || s2.ks.empty()) {
    if (with_spectral) out.spectral = moment_spectral(w);
    out.residual = std::abs(out.spectral);
    return out;
  }
  const double y_max = 4.0 * std::numbers::pi * static_cast<double>(ns.back());
  const long cmax = std::max(moduli_needed(s1, y_max, accuracy), moduli_needed(s2, y_max, accuracy));
  if (cmax > max_moduli) {
    throw AccuracyError("moment c-sum needs " + std::to_string(cmax) + " moduli");
  }
  out.c_cutoff = cmax;

  // Upper triangle (i <= j) of the pair grid; Q is symmetric in (m, n).
  const std::size_t count = ns.size();
  struct PairState {
    long m, n;
    double y;
    long cm;
    Kahan q1, q2;
  };
  std::vector<PairState> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      const double y = 4.0 * std::numbers::pi * std::sqrt(static_cast<double>(ns[i]) * ns[j]);
      const long cm = std::max(moduli_needed(s1, y, accuracy), moduli_needed(s2, y, accuracy));
      pairs.push_back({ns[i], ns[j], y, cm, {}, {}});
      index.emplace_back(i, j);
    }
  }
  // Moduli in chunks so only one chunk of residue tables is alive; every pair
  // accumulates its c terms in increasing c regardless of thread count.
  const int nu_max = std::max(s1.nu_max, s2.nu_max);
  constexpr long kChunk = 256;
  for (long c0 = 1; c0 <= cmax; c0 += kChunk) {
    const long c1 = std::min(cmax, c0 + kChunk - 1);
    std::vector<std::unique_ptr<arith::ModulusTable>> tables(c1 - c0 + 1);
    parallel_for(tables.size(), [&](std::size_t t) {
      tables[t] = std::make_unique<arith::ModulusTable>(c0 + static_cast<long>(t));
    });
    parallel_for(pairs.size(), [&](std::size_t p) {
      auto& st = pairs[p];
      for (long c = c0; c <= std::min(c1, st.cm); ++c) {
        const auto j = bessel::bessel_j_range(nu_max, st.y / c);
        double a1 = 0.0, a2 = 0.0;
        for (std::size_t k = 0; k < s1.ks.size(); ++k) a1 += s1.coef[k] * j[s1.ks[k] - 1];
        for (std::size_t k = 0; k < s2.ks.size(); ++k) a2 += s2.coef[k] * j[s2.ks[k] - 1];
        if (a1 == 0.0 && a2 == 0.0) continue;
        const double sk = arith::kloosterman(st.m, st.n, *tables[c - c0]) / c;
        st.q1.add(sk * a1);
        st.q2.add(sk * a2);
      }
    });
  }
  std::vector<double> q1(pairs.size()), q2(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    q1[p] = 2.0 * std::numbers::pi * pairs[p].q1.value();
    q2[p] = 2.0 * std::numbers::pi * pairs[p].q2.value();
  }

  const double kk = w.k1 * w.k2;
  const double g1 = g0_mass(w.k1, w.l1), g2 = g0_mass(w.k2, w.l2);
  std::vector<double> diag0, diag1, diag2;
  std::vector<double> re11, im11;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = index[p];
    const double amp = cut[i] * cut[j];
    if (i == j) {
      diag0.push_back(amp);
      diag1.push_back(amp * q1[p]);
      diag2.push_back(amp * q2[p]);
      re11.push_back(amp * q1[p] * q2[p]);
      continue;
    }
    // (n, m) and (m, n) together: e(theta) + e(-theta) = 2 cos(2 pi theta).
    const double theta = w.alpha * (std::pow(static_cast<double>(ns[i]), w.beta) -
                                    std::pow(static_cast<double>(ns[j]), w.beta));
    const double frac = theta - std::floor(theta);
    re11.push_back(2.0 * amp * q1[p] * q2[p] * std::cos(2.0 * std::numbers::pi * frac));
  }
  out.d00 = kk * g1 * g2 * simd::compensated_sum(diag0);
  out.d01 = kk * g1 * simd::compensated_sum(diag2);
  out.d10 = kk * g2 * simd::compensated_sum(diag1);
  out.d11 = kk * simd::compensated_sum(re11);

  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (with_spectral) {
    out.spectral = moment_spectral(w);
    out.residual = std::abs(out.spectral - out.total());
  }
  return out;
}

Regime parse_regime(const std::string& name) {
  if (name == "large") return Regime::kLarge;
  if (name == "k2_small") return Regime::kK2Small;
  if (name == "equal") return Regime::kEqual;
  if (name == "beta_one") return Regime::kBetaOne;
  throw ValidationError("unknown regime '" + name + "' (large, k2_small, equal, beta_one)");
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kLarge: return "large";
    case Regime::kK2Small: return "k2_small";
    case Regime::kEqual: return "equal";
    case Regime::kBetaOne: return "beta_one";
  }
  return "?";
}

void check_regime(const MomentWindow& w, Regime r) {
  w.validate();
  const double e = w.epsilon, x = w.x;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw RegimeError(std::string(regime_name(r)) + ": requires " + what);
  };
  need(std::pow(w.k1, e) <= w.l1 && w.l1 <= std::pow(w.k1, 1 - e), "K1^e <= L1 <= K1^(1-e)");
  need(std::pow(w.k2, e) <= w.l2 && w.l2 <= std::pow(w.k2, 1 - e), "K2^e <= L2 <= K2^(1-e)");
  switch (r) {
    case Regime::kLarge:
      need(w.k1 * w.l1 >= std::pow(x, 1 + e), "K1 L1 >= X^(1+e)");
      need(w.k2 >= std::pow(x, 0.5 + e), "K2 >= X^(1/2+e)");
      break;
    case Regime::kK2Small:
      need(w.k1 * w.l1 >= std::pow(x, 1 + e), "K1 L1 >= X^(1+e)");
      need(w.k2 <= std::sqrt(x), "K2 <= X^(1/2)");
      break;
    case Regime::kEqual:
      need(w.beta < 1.0, "beta < 1");
      need(w.k1 == w.k2, "K1 = K2");
      need(w.k1 * w.l1 <= std::pow(x, 1 + e), "K1 L1 <= X^(1+e)");
      need(w.k2 * w.l2 <= std::pow(x, 1 + e), "K2 L2 <= X^(1+e)");
      need(w.k1 * w.k1 * w.l1 * w.l2 >= std::pow(x, 1 + w.beta + e),
           "K1^2 L1 L2 >= X^(1+beta+e)");
      break;
    case Regime::kBetaOne:
      need(w.beta == 1.0, "beta = 1");
      need(w.k1 == w.k2, "K1 = K2");
      need(w.k1 * w.l1 <= std::pow(x, 1 - e), "K1 L1 <= X^(1-e)");
      need(w.k2 * w.l2 <= std::pow(x, 1 - e), "K2 L2 <= X^(1-e)");
      break;
  }
}

double bound_rhs(const MomentWindow& w, Regime r) {
  const double e = w.epsilon, x = w.x;
  const double base = w.k1 * w.l1 * w.k2 * w.l2 * std::pow(x, 1 + e);
  switch (r) {
    case Regime::kLarge: return base;
    case Regime::kK2Small: return base + w.k1 * w.l1 * w.l2 / w.k2 * std::pow(x, 1.5 + e);
    case Regime::kEqual:
      return w.k1 * w.k1 * w.l1 * w.l2 * std::pow(x, 1 + e) + std::pow(x, 3 + e) / w.k1;
    case Regime::kBetaOne:
      return std::min(w.l1, w.l2) * w.k1 * std::pow(x, 2 + e) + std::pow(x, 3 + e) / w.k1;
  }
  return 0.0;
}

std::vector<BoundRow> theorem_bound_report(const MomentWindow& w, Regime r,
                                           std::span<const double> xs) {
  std::vector<BoundRow> rows;
  for (double x : xs) {
    MomentWindow wx = w;
    wx.x = x;
    check_regime(wx, r);
    BoundRow row;
    row.x = x;
    row.measured = moment_spectral(wx);
    row.bound = bound_rhs(wx, r);
    row.ratio = row.measured / row.bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cusp::moments
