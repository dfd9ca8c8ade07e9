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

#include "cusp/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cusp/bessel.hpp"
#include "cusp/error.hpp"
#include "cusp/parallel.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/weights.hpp"

namespace cusp::osc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// e(t) with t in turns.
cplx expi_turns(double t) {
  const double f = t - std::floor(t);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

void check_eta(int eta) {
  if (eta != 1 && eta != -1) throw ValidationError("eta must be +1 or -1");
}

void check_window(double k, double l) {
  if (!std::isfinite(k) || !(l > 0.0) || !std::isfinite(l)) {
    throw ValidationError("window needs finite K and L > 0");
  }
}

// J_n(x) for any integer n.
double bessel_signed(const std::vector<double>& j, int n) {
  if (n >= 0) return j[n];
  return (n % 2 == 0) ? j[-n] : -j[-n];
}

// (-i eta)^n.
cplx power_minus_i(int eta, int n) {
  const cplx b(0.0, -static_cast<double>(eta));
  switch (((n % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return b;
    case 2: return -1.0;
    default: return -b;
  }
}

// Integer k with |k - K| < L.
std::pair<int, int> window_range(double k, double l) {
  return {static_cast<int>(std::floor(k - l)) + 1, static_cast<int>(std::ceil(k + l)) - 1};
}

}  // namespace

cplx v_sum(double k, double l, double x) {
  check_window(k, l);
  if (!(x >= 0.0)) throw DomainError("v_sum needs x >= 0");
  auto [lo, hi] = window_range(k, l);
  int nu_max = 0;
  for (int kk = lo; kk <= hi; ++kk) nu_max = std::max(nu_max, std::abs(kk - 1));
  const auto j = bessel::bessel_j_range(nu_max, x);
  double s = 0.0;
  for (int kk = lo; kk <= hi; ++kk) {
    if (kk % 2 != 0) continue;
    const double g = weights::g0((kk - k) / l);
    if (g == 0.0) continue;
    const double ik = (kk / 2) % 2 == 0 ? 1.0 : -1.0;  // i^k for even k
    s += ik * g * bessel_signed(j, kk - 1);
  }
  return s;
}

cplx w_bessel(int k, double l, int eta, double x) {
  check_window(k, l);
  check_eta(eta);
  if (!(x >= 0.0)) throw DomainError("w_bessel needs x >= 0");
  auto [lo, hi] = window_range(k, l);
  int nu_max = 0;
  for (int kk = lo; kk <= hi; ++kk) nu_max = std::max(nu_max, std::abs(kk - 1));
  const auto j = bessel::bessel_j_range(nu_max, x);
  cplx s = 0.0;
  for (int kk = lo; kk <= hi; ++kk) {
    const double g = weights::g0(static_cast<double>(kk - k) / l);
    if (g == 0.0) continue;
    s += g * power_minus_i(eta, kk - 1) * bessel_signed(j, kk - 1);
  }
  return s;
}

double g0_hat_envelope_range(double floor) {
  const auto& tr = weights::G0Transform::instance();
  const auto& g = tr.grid(0);
  std::size_t last = 0;
  for (std::size_t i = g.size(); i-- > 0;) {
    if (std::abs(g[i]) > floor) {
      last = i;
      break;
    }
  }
  return std::min(tr.range(), (static_cast<double>(last) + 1.0) * tr.spacing());
}

cplx w_integral(double k, double l, int eta, double x, const WOptions& opt) {
  check_window(k, l);
  check_eta(eta);
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("w_integral needs finite x >= 0");
  if (!(opt.panel_phase > 0.0) || !(opt.abs_tol > 0.0)) {
    throw ValidationError("w_integral options must be positive");
  }
  const auto& g0h = weights::G0Transform::instance();
  const double t_max = g0_hat_envelope_range(opt.envelope_floor);
  const double w = kTwoPi / l;
  const double slope = (k - 1.0) / l;
  const double curv = x * w * w;  // bound on |psi''| in radians

  // cos(2 pi t/L) has period L and the linear phase gains e(-(K-1)) per
  // period, so the integral over |t| <= t_max folds onto [0, L) with
  // f(t) = sum_n g0_hat(t + nL) e(-(K-1) n).
  const int shifts = static_cast<int>(std::ceil(t_max / l)) + 1;
  std::vector<cplx> twist(2 * shifts + 1);
  for (int n = -shifts; n <= shifts; ++n) twist[n + shifts] = expi_turns(-(k - 1.0) * n);
  auto folded = [&](double t) -> cplx {
    cplx s = 0.0;
    for (int n = -shifts; n <= shifts; ++n) {
      const double y = t + n * l;
      if (std::abs(y) <= t_max) s += g0h(y) * twist[n + shifts];
    }
    return s;
  };
  auto f = [&](double t) -> cplx {
    return folded(t) * expi_turns(-slope * t - eta * x / kTwoPi * std::cos(w * t));
  };
  auto dpsi = [&](double t) {
    return std::abs(-kTwoPi * slope + eta * x * w * std::sin(w * t));
  };

  // Fixed chunking keeps the reduction order independent of thread count.
  constexpr int kChunks = 64;
  std::vector<cplx> part(kChunks);
  parallel_for(kChunks, [&](std::size_t c) {
    const double a = l * static_cast<double>(c) / kChunks;
    const double b = l * static_cast<double>(c + 1) / kChunks;
    cplx sum = 0.0, comp = 0.0;
    double t = a;
    while (t < b) {
      const double d1 = dpsi(t);
      double s = curv > 0.0
                     ? (-d1 + std::sqrt(d1 * d1 + 2.0 * curv * opt.panel_phase)) / curv
                     : opt.panel_phase / std::max(d1, 1e-300);
      s = std::min({s, 1.0, b - t});
      const double e = t + s >= b ? b : t + s;
      // Per-panel share of abs_tol, floored near double precision: with
      // ~1e6 panels the plain share is below what any rule can resolve.
      const double tol = std::max(opt.abs_tol / l, 1e-14) * (e - t);
      auto [val, err] = quad::detail::kronrod15<cplx>(f, t, e);
      if (err > tol) val = quad::integrate<cplx>(f, t, e, tol).value;
      const cplx y = val - comp;
      const cplx z = sum + y;
      comp = (z - sum) - y;
      sum = z;
      t = e;
    }
    part[c] = sum;
  });
  cplx s = 0.0;
  for (const auto& p : part) s += p;
  return s;
}

cplx w_main_term(double k, double l, int eta, double x, MainTermForm form) {
  check_window(k, l);
  check_eta(eta);
  const double km1 = k - 1.0;
  if (!(x > std::abs(km1))) throw DomainError("w_main_term needs x > K - 1");
  const double root = std::sqrt((x - km1) * (x + km1));
  const double as = std::asin(km1 / x);
  const double gamma = eta * l / kTwoPi * as;
  const double g = weights::g0_hat(gamma);
  if (form == MainTermForm::kCorrected) {
    const double amp = l / std::sqrt(kTwoPi * root) * g;
    return amp * expi_turns(eta / 8.0 - eta / kTwoPi * root - eta * km1 / kTwoPi * as);
  }
  const double amp = l / std::sqrt(kPi * root) * g;
  const cplx eta_inv_sqrt = eta == 1 ? cplx(1.0) : cplx(0.0, -1.0);  // 1/sqrt(-1) = -i
  return amp * eta_inv_sqrt * expi_turns(1.0 / 8.0 - eta / 2.0 * root - eta * km1 / kTwoPi * as);
}

cplx v_from_w(double k, double l, double x, VSign sign, const WOptions& opt) {
  const cplx diff = w_integral(k, l, -1, x, opt) - w_integral(k, l, 1, x, opt);
  const cplx half_i(0.0, 0.5);
  return sign == VSign::kCorrected ? half_i * diff : -half_i * diff;
}

// ---------------------------------------------------------------------------

namespace {

struct Root {
  double r;  // 16 pi^2 mn/c^2 - (K-1)^2
  double s;  // (K-1) c/(4 pi sqrt(mn))
};

Root feasible_root(double m, double n, double c, double k) {
  if (!(m > 0.0) || !(n > 0.0) || !(c > 0.0)) throw DomainError("phase needs m, n, c > 0");
  if (!(k >= 1.0)) throw DomainError("phase needs K >= 1");
  const double km1 = k - 1.0;
  const double r = 16.0 * kPi * kPi * m * n / (c * c) - km1 * km1;
  const double s = km1 * c / (4.0 * kPi * std::sqrt(m * n));
  if (!(r > 0.0) || !(s < 1.0)) {
    throw DomainError("16 pi^2 mn/c^2 must exceed (K-1)^2");
  }
  return {r, s};
}

}  // namespace

double phase_phi(double m, double n, double c, double k, int eta) {
  check_eta(eta);
  const auto [r, s] = feasible_root(m, n, c, k);
  return -eta / kTwoPi * std::sqrt(r) - eta * (k - 1.0) / kTwoPi * std::asin(s);
}

double amplitude_h(double m, double n, double c, double k, double l, int eta) {
  check_eta(eta);
  if (!(l > 0.0)) throw ValidationError("amplitude needs L > 0");
  const auto [r, s] = feasible_root(m, n, c, k);
  return weights::g0_hat(eta * l / kTwoPi * std::asin(s)) / std::sqrt(std::sqrt(r));
}

void PhaseContext::validate() const {
  if (!(u > 0.0) || !(v > 0.0) || !std::isfinite(u) || !std::isfinite(v)) {
    throw ValidationError("u, v must be positive");
  }
  if (c1 < 1 || c2 < 1 || d < 1) throw ValidationError("c1, c2, d must be >= 1");
  check_eta(eta1);
  check_eta(eta2);
  if (!(k1 >= 1.0) || !(k2 >= 1.0)) throw ValidationError("K_j must be >= 1");
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw ValidationError("L_j must be positive");
  if (!(beta > 0.0) || !(beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
  if (!std::isfinite(alpha) || !std::isfinite(m) || !std::isfinite(n)) {
    throw ValidationError("alpha, m, n must be finite");
  }
  if (!(x > 0.0)) throw ValidationError("X must be positive");
}

PhaseContext PhaseContext::at(double uu, double vv) const {
  PhaseContext c = *this;
  c.u = uu;
  c.v = vv;
  return c;
}

double PhaseContext::r(int j) const {
  const double c = (j == 1 ? c1 : c2) * static_cast<double>(d);
  const double km1 = (j == 1 ? k1 : k2) - 1.0;
  return 16.0 * kPi * kPi * u * v / (c * c) - km1 * km1;
}

double theta(double u, double v, const PhaseContext& ctx) {
  const PhaseContext c = ctx.at(u, v);
  c.validate();
  const double cd1 = static_cast<double>(c.c1) * c.d, cd2 = static_cast<double>(c.c2) * c.d;
  const double q = static_cast<double>(c.c1) * c.c2 * c.d;
  return c.alpha * std::pow(v, c.beta) - c.alpha * std::pow(u, c.beta) +
         phase_phi(u, v, cd1, c.k1, c.eta1) + phase_phi(u, v, cd2, c.k2, c.eta2) -
         (c.m * u + c.n * v) / q;
}

namespace {

struct Pieces {
  double r1, r2, sr1, sr2;
  double cd1sq, cd2sq;  // (c_j d)^2
  double s, t;          // S = eta1 sqrt R1 + eta2 sqrt R2, T = eta1/(c1^2 sqrt R1) + ...
};

Pieces pieces(const PhaseContext& c) {
  Pieces p{};
  p.r1 = c.r(1);
  p.r2 = c.r(2);
  if (!(p.r1 > 0.0) || !(p.r2 > 0.0)) throw DomainError("R_j must be positive");
  p.sr1 = std::sqrt(p.r1);
  p.sr2 = std::sqrt(p.r2);
  p.cd1sq = std::pow(static_cast<double>(c.c1) * c.d, 2);
  p.cd2sq = std::pow(static_cast<double>(c.c2) * c.d, 2);
  p.s = c.eta1 * p.sr1 + c.eta2 * p.sr2;
  p.t = c.eta1 / (static_cast<double>(c.c1) * c.c1 * p.sr1) +
        c.eta2 / (static_cast<double>(c.c2) * c.c2 * p.sr2);
  return p;
}

double k_form(const PhaseContext& c, const Pieces& p) {
  const double u = c.u, v = c.v;
  const double a1 = (c.k1 - 1.0) * (c.k1 - 1.0), a2 = (c.k2 - 1.0) * (c.k2 - 1.0);
  return -p.s / (16.0 * kPi * kPi * u * u * v * v) * (c.eta1 * a1 / p.sr1 + c.eta2 * a2 / p.sr2);
}

}  // namespace

ThetaDerivs theta_derivs(const PhaseContext& c) {
  c.validate();
  const Pieces p = pieces(c);
  const double u = c.u, v = c.v, ab = c.alpha * c.beta;
  const double q = static_cast<double>(c.c1) * c.c2 * c.d;
  ThetaDerivs o;
  o.value = theta(u, v, c);
  o.du = -ab * std::pow(u, c.beta - 1.0) - p.s / (4.0 * kPi * u) - c.m / q;
  o.dv = ab * std::pow(v, c.beta - 1.0) - p.s / (4.0 * kPi * v) - c.n / q;
  auto& U = o.uterms;
  auto& V = o.vterms;
  U[0] = -ab * (c.beta - 1.0) * std::pow(u, c.beta - 2.0);
  U[1] = c.eta1 * p.sr1 / (4.0 * kPi * u * u);
  U[2] = c.eta2 * p.sr2 / (4.0 * kPi * u * u);
  U[3] = -kTwoPi * c.eta1 * v / (u * p.cd1sq * p.sr1);
  U[4] = -kTwoPi * c.eta2 * v / (u * p.cd2sq * p.sr2);
  V[0] = ab * (c.beta - 1.0) * std::pow(v, c.beta - 2.0);
  V[1] = c.eta1 * p.sr1 / (4.0 * kPi * v * v);
  V[2] = c.eta2 * p.sr2 / (4.0 * kPi * v * v);
  V[3] = -kTwoPi * c.eta1 * u / (v * p.cd1sq * p.sr1);
  V[4] = -kTwoPi * c.eta2 * u / (v * p.cd2sq * p.sr2);
  o.duu = U[0] + U[1] + U[2] + U[3] + U[4];
  o.dvv = V[0] + V[1] + V[2] + V[3] + V[4];
  o.duv = -kTwoPi * c.eta1 / (p.cd1sq * p.sr1) - kTwoPi * c.eta2 / (p.cd2sq * p.sr2);
  const double su = U[1] + U[2] + U[3] + U[4], sv = V[1] + V[2] + V[3] + V[4];
  o.det = U[0] * V[0] + U[0] * sv + V[0] * su + k_form(c, p);
  return o;
}

HessianForms hessian_forms(const PhaseContext& c) {
  const ThetaDerivs t = theta_derivs(c);
  const Pieces p = pieces(c);
  const auto& U = t.uterms;
  const auto& V = t.vterms;
  const double u = c.u, v = c.v;
  const double uv2 = 16.0 * kPi * kPi * u * u * v * v;
  HessianForms h;
  h.expanded = (U[1] + U[2]) * (V[1] + V[2] + V[3] + V[4]) + (U[3] + U[4]) * (V[1] + V[2]);
  h.s_t = p.s * p.s / uv2 - p.s * p.t / (u * v * c.d * c.d);
  h.k_form = k_form(c, p);
  if (c.eta1 != c.eta2 && c.k1 == c.k2) {
    const double km1sq = (c.k1 - 1.0) * (c.k1 - 1.0);
    const double den = uv2 * std::sqrt(p.r1 * p.r2);
    const double dsr = p.sr1 - p.sr2;
    h.diff_sq = km1sq * dsr * dsr / den;
    const double c1sq = static_cast<double>(c.c1) * c.c1, c2sq = static_cast<double>(c.c2) * c.c2;
    const double dr = 16.0 * kPi * kPi * u * v * (c2sq - c1sq) / (c.d * c.d * c1sq * c2sq);
    const double ssum = p.sr1 + p.sr2;
    h.diff_ratio = km1sq * dr * dr / (den * ssum * ssum);
  } else {
    h.diff_sq = kNaN;
    h.diff_ratio = kNaN;
  }
  h.det_direct = t.duu * t.dvv - t.duv * t.duv;
  h.det_grouped = t.det;
  double vabs = 0.0;
  for (int i = 1; i < 5; ++i) vabs += std::abs(V[i]);
  h.scale = (std::abs(U[1]) + std::abs(U[2])) * vabs +
            (std::abs(U[3]) + std::abs(U[4])) * (std::abs(V[1]) + std::abs(V[2]));
  h.scale_det = std::abs(t.duu * t.dvv) + t.duv * t.duv;
  return h;
}

double hessian_identity_check(const PhaseContext& c) {
  const HessianForms h = hessian_forms(c);
  std::vector<double> forms{h.expanded, h.s_t, h.k_form};
  if (!std::isnan(h.diff_sq)) {
    forms.push_back(h.diff_sq);
    forms.push_back(h.diff_ratio);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      worst = std::max(worst, std::abs(forms[i] - forms[j]) / h.scale);
    }
  }
  worst = std::max(worst, std::abs(h.det_direct - h.det_grouped) / h.scale_det);
  return worst;
}

IdentityCheck identity_check(const PhaseContext& c, int j) {
  c.validate();
  if (j != 1 && j != 2) throw ValidationError("identity_check needs j in {1, 2}");
  const double r = c.r(j);
  if (!(r > 0.0)) throw DomainError("R_j must be positive");
  const double sr = std::sqrt(r);
  const double u = c.u, v = c.v;
  const double cd = (j == 1 ? c.c1 : c.c2) * static_cast<double>(c.d);
  const double km1 = (j == 1 ? c.k1 : c.k2) - 1.0;
  const double uv2 = 16.0 * kPi * kPi * u * u * v * v;
  IdentityCheck o;
  o.direct = sr / (4.0 * kPi * u * u) - kTwoPi * v / (u * cd * cd * sr);
  o.combined = (kTwoPi * v / (u * cd * cd) - km1 * km1 / (4.0 * kPi * u * u)) / sr;
  o.asymptotic = std::sqrt(v / u) / (2.0 * cd * u);
  o.helper_direct = sr / uv2 - 1.0 / (u * v * cd * cd * sr);
  o.helper_k_form = -km1 * km1 / (uv2 * sr);
  return o;
}

Bracket middle_term_bracket(const PhaseContext& c) {
  const Pieces p = pieces(c);
  const double s = c.eta1 == c.eta2 ? c.c1 + c.c2 : std::abs(c.c1 - c.c2);
  const double dc = static_cast<double>(c.d) * c.c1 * c.c2;
  Bracket b;
  b.value = std::abs(p.s) / (4.0 * kPi * c.u);
  b.lo = s / (std::sqrt(2.0) * dc);
  b.hi = std::sqrt(2.0) * s / dc;
  return b;
}

// ---------------------------------------------------------------------------
// Amplitude

namespace {

// h_j as a function of p = uv, with first and second derivatives in p.
struct HFactor {
  double a, b;   // R = a p - b
  double s0;     // s = s0 / sqrt(p)
  double gscale; // gamma = gscale * asin(s)

  HFactor(double cd, double k, double l, int eta)
      : a(16.0 * kPi * kPi / (cd * cd)),
        b((k - 1.0) * (k - 1.0)),
        s0((k - 1.0) * cd / (4.0 * kPi)),
        gscale(eta * l / kTwoPi) {}

  std::array<double, 3> eval(double p, int order) const {
    const double r = a * p - b;
    const double s = s0 / std::sqrt(p);
    if (!(r > 0.0) || !(s < 1.0)) throw DomainError("R_j must be positive on the support");
    const auto& g0h = weights::G0Transform::instance();
    const double as = std::asin(s);
    const double w = 1.0 / std::sqrt(std::sqrt(r));
    const double g = g0h(gscale * as);
    if (order == 0) return {g * w, 0.0, 0.0};
    const double q = std::sqrt(1.0 - s * s);
    const double s1 = -s / (2.0 * p), s2 = 3.0 * s / (4.0 * p * p);
    const double as1 = s1 / q, as2 = s2 / q + s * s1 * s1 / (q * q * q);
    const double ga1 = gscale * as1, ga2 = gscale * as2;
    const double w1 = -0.25 * a * w / r, w2 = 0.3125 * a * a * w / (r * r);
    const double gd1 = g0h(gscale * as, 1), gd2 = g0h(gscale * as, 2);
    const double G1 = gd1 * ga1, G2 = gd2 * ga1 * ga1 + gd1 * ga2;
    return {g * w, G1 * w + g * w1, G2 * w + 2.0 * G1 * w1 + g * w2};
  }
};

struct HPair {
  HFactor h1, h2;
  explicit HPair(const PhaseContext& c)
      : h1(static_cast<double>(c.c1) * c.d, c.k1, c.l1, c.eta1),
        h2(static_cast<double>(c.c2) * c.d, c.k2, c.l2, c.eta2) {}
  std::array<double, 3> eval(double p, int order) const {
    const auto x = h1.eval(p, order), y = h2.eval(p, order);
    return {x[0] * y[0], x[1] * y[0] + x[0] * y[1], x[2] * y[0] + 2.0 * x[1] * y[1] + x[0] * y[2]};
  }
};

}  // namespace

double amplitude_a(double u, double v, const PhaseContext& ctx) {
  ctx.at(u, v).validate();
  const double pu = weights::phi(u / ctx.x), pv = weights::phi(v / ctx.x);
  if (pu == 0.0 || pv == 0.0) return 0.0;
  return pu * pv * HPair(ctx).eval(u * v, 0)[0];
}

double amplitude_a_uv(double u, double v, const PhaseContext& ctx) {
  ctx.at(u, v).validate();
  const double X = ctx.x;
  const double A = weights::phi(u / X), B = weights::phi(v / X);
  const double A1 = weights::phi(u / X, 1) / X, B1 = weights::phi(v / X, 1) / X;
  if ((A == 0.0 && A1 == 0.0) || (B == 0.0 && B1 == 0.0)) return 0.0;
  const auto H = HPair(ctx).eval(u * v, 2);
  return A1 * B1 * H[0] + A1 * B * H[1] * u + A * B1 * H[1] * v + A * B * (H[1] + H[2] * u * v);
}

// ---------------------------------------------------------------------------
// Derivative tests

namespace {

// Tensor Gauss-Legendre over a box with `panels` equal panels per side.
template <class F>
double box_quadrature(const Domain& dom, int panels, int nodes, F&& f) {
  const auto& rule = quad::gauss_legendre(nodes);
  auto axis = [&](double a, double b) {
    std::vector<std::pair<double, double>> pts;
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
      const double c = a + (i + 0.5) * w;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        pts.emplace_back(c + 0.5 * w * rule.nodes[k], 0.5 * w * rule.weights[k]);
      }
    }
    return pts;
  };
  const auto us = axis(dom.u0, dom.u1), vs = axis(dom.v0, dom.v1);
  std::vector<double> rows(us.size());
  parallel_for(us.size(), [&](std::size_t i) {
    double s = 0.0;
    for (const auto& [v, wv] : vs) s += wv * f(us[i].first, v);
    rows[i] = us[i].second * s;
  });
  double s = 0.0;
  for (double r : rows) s += r;
  return s;
}

// int_a^b g(t) e(N t^2) dt with panels of at most 1/16 turn.
template <class G>
cplx quadratic_phase_1d(double n, G&& g) {
  const auto& rule = quad::gauss_legendre(12);
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * std::abs(n) * 16.0)));
  const double w = 1.0 / panels;
  cplx s = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double c = 1.0 + (i + 0.5) * w;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double t = c + 0.5 * w * rule.nodes[k];
      s += 0.5 * w * rule.weights[k] * g(t) * expi_turns(n * t * t);
    }
  }
  return s;
}

DerivativeProblem quadratic_base(double n) {
  if (!(n > 0.0)) throw ValidationError("quadratic preset needs N > 0");
  DerivativeProblem p;
  p.domain = {1.0, 2.0, 1.0, 2.0};
  p.r1 = p.r2 = std::sqrt(2.0 * n);
  p.hessian = [n](double, double) { return Hessian{2.0 * n, 2.0 * n, 0.0, 4.0 * n * n}; };
  return p;
}

}  // namespace

DerivativeProblem quadratic_problem(double n) {
  DerivativeProblem p = quadratic_base(n);
  p.name = "quadratic";
  p.a_uv = [](double, double) { return 1.0; };
  p.integral = [n] {
    const cplx one = quadratic_phase_1d(n, [](double t) { return t; });
    return one * one;
  };
  return p;
}

DerivativeProblem constant_amplitude_problem(double n) {
  DerivativeProblem p = quadratic_base(n);
  p.name = "constant";
  p.a_uv = [](double, double) { return 0.0; };
  p.integral = [n] {
    const cplx one = quadratic_phase_1d(n, [](double) { return 1.0; });
    return one * one;
  };
  return p;
}

DerivativeProblem j_integral_problem(const PhaseContext& base) {
  const PhaseContext ctx = base.at(base.x, base.x);
  ctx.validate();
  const double s = ctx.eta1 == ctx.eta2 ? ctx.c1 + ctx.c2 : std::abs(ctx.c1 - ctx.c2);
  if (s == 0.0) throw DomainError("r1 = r2 = 0 when eta1 != eta2 and c1 = c2");
  const double k = std::max(ctx.k1, ctx.k2);
  DerivativeProblem p;
  p.name = "paperJ";
  p.domain = {ctx.x, 2.0 * ctx.x, ctx.x, 2.0 * ctx.x};
  p.r1 = p.r2 = std::sqrt(k * s) / (std::pow(static_cast<double>(ctx.c1) * ctx.c2, 0.25) * ctx.x);
  p.a_uv = [ctx](double u, double v) { return amplitude_a_uv(u, v, ctx); };
  p.hessian = [ctx](double u, double v) {
    const ThetaDerivs t = theta_derivs(ctx.at(u, v));
    return Hessian{t.duu, t.dvv, t.duv, t.det};
  };
  p.integral = [ctx] { return integral_j(ctx); };
  p.hypothesis_floor = kJHypothesisFloor;
  return p;
}

DerivativeTestReport second_derivative_test(const DerivativeProblem& p,
                                            const DerivativeTestOptions& opt) {
  if (!(p.r1 > 0.0) || !(p.r2 > 0.0)) throw ValidationError("r1, r2 must be positive");
  if (opt.hypothesis_grid < 2 || opt.var_panels < 1 || opt.var_nodes < 1) {
    throw ValidationError("derivative test grid sizes must be positive");
  }
  const Domain& d = p.domain;
  DerivativeTestReport rep;
  rep.r1 = p.r1;
  rep.r2 = p.r2;
  const double r1sq = p.r1 * p.r1, r2sq = p.r2 * p.r2;
  rep.kappa_uu = rep.kappa_vv = rep.kappa_det = std::numeric_limits<double>::infinity();
  const int g = opt.hypothesis_grid;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double u = d.u0 + (d.u1 - d.u0) * i / (g - 1);
      const double v = d.v0 + (d.v1 - d.v0) * j / (g - 1);
      const Hessian h = p.hessian(u, v);
      rep.kappa_uu = std::min(rep.kappa_uu, std::abs(h.uu) / r1sq);
      rep.kappa_vv = std::min(rep.kappa_vv, std::abs(h.vv) / r2sq);
      rep.kappa_det = std::min(rep.kappa_det, std::abs(h.det) / (r1sq * r2sq));
    }
  }
  const double floor = p.hypothesis_floor * (1.0 - 1e-12);
  rep.hypotheses_hold = rep.kappa_uu >= floor && rep.kappa_vv >= floor && rep.kappa_det >= floor;
  if (!rep.hypotheses_hold && opt.require_hypotheses) {
    throw HypothesisError("second derivative test hypotheses fail for " + p.name +
                          ": min |theta_uu|/r1^2 = " + std::to_string(rep.kappa_uu) +
                          ", |theta_vv|/r2^2 = " + std::to_string(rep.kappa_vv) +
                          ", |det|/(r1 r2)^2 = " + std::to_string(rep.kappa_det) +
                          " against floor " + std::to_string(p.hypothesis_floor));
  }
  rep.var_a = box_quadrature(d, opt.var_panels, opt.var_nodes,
                             [&](double u, double v) { return std::abs(p.a_uv(u, v)); });
  rep.measured = std::abs(p.integral());
  rep.bound = rep.var_a / (p.r1 * p.r2);
  rep.degenerate = !(rep.var_a > 0.0);
  rep.ratio = rep.degenerate ? std::numeric_limits<double>::infinity() : rep.measured / rep.bound;
  return rep;
}

FirstDerivativeResult first_derivative_negligibility(double u, double n, double t, double m,
                                                     double threshold, int n0, double length) {
  if (!(u > 0.0) || !(n > 0.0) || !(t > 0.0) || !(m > 0.0) || !(threshold > 0.0) ||
      !(length > 0.0) || n0 < 0) {
    throw ValidationError("first derivative test scales must be positive");
  }
  FirstDerivativeResult r;
  r.factor = m / (t * n);
  r.budget = length * u * std::pow(r.factor, n0 + 1);
  r.negligible = r.factor < 1.0 && r.budget < threshold;
  return r;
}

// ---------------------------------------------------------------------------
// J

namespace {

struct JSetup {
  PhaseContext c;
  HPair h;
  double q;  // c1 c2 d
  double cd1, cd2;
  double phase_turns;
  int nodes;

  JSetup(const PhaseContext& ctx, int refine)
      : c(ctx),
        h(ctx),
        q(static_cast<double>(ctx.c1) * ctx.c2 * ctx.d),
        cd1(static_cast<double>(ctx.c1) * ctx.d),
        cd2(static_cast<double>(ctx.c2) * ctx.d),
        phase_turns(0.125 / std::pow(2.0, refine)),
        nodes(8 + 2 * refine) {}

  // phi_1 + phi_2 at p = uv.
  double big_phi(double p) const {
    return phase_phi(p, 1.0, cd1, c.k1, c.eta1) + phase_phi(p, 1.0, cd2, c.k2, c.eta2);
  }
  // |d(phi_1 + phi_2)/dp| = |eta1 sqrt R1 + eta2 sqrt R2| / (4 pi p) <= this.
  double big_phi_rate(double p) const {
    const double r1 = 16.0 * kPi * kPi * p / (cd1 * cd1) - (c.k1 - 1.0) * (c.k1 - 1.0);
    const double r2 = 16.0 * kPi * kPi * p / (cd2 * cd2) - (c.k2 - 1.0) * (c.k2 - 1.0);
    return (std::sqrt(std::max(r1, 0.0)) + std::sqrt(std::max(r2, 0.0))) / (4.0 * kPi * p);
  }
};

std::vector<std::pair<double, double>> panel_nodes(double a, double b, int panels,
                                                   const quad::Rule& rule) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double c = a + (i + 0.5) * w;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      pts.emplace_back(c + 0.5 * w * rule.nodes[k], 0.5 * w * rule.weights[k]);
    }
  }
  return pts;
}

cplx j_tensor(const JSetup& s) {
  const PhaseContext& c = s.c;
  const double X = c.x, ab = c.alpha * c.beta;
  const double rmax = std::max(s.big_phi_rate(X * X) * 2.0 * X, s.big_phi_rate(4.0 * X * X) * 2.0 * X);
  const double gu = ab * std::max(std::pow(X, c.beta - 1.0), std::pow(2.0 * X, c.beta - 1.0)) +
                    rmax + std::abs(c.m) / s.q;
  const double gv = ab * std::max(std::pow(X, c.beta - 1.0), std::pow(2.0 * X, c.beta - 1.0)) +
                    rmax + std::abs(c.n) / s.q;
  const auto& rule = quad::gauss_legendre(s.nodes);
  const int nu = std::max(4, static_cast<int>(std::ceil(gu * X / s.phase_turns)));
  const int nv = std::max(4, static_cast<int>(std::ceil(gv * X / s.phase_turns)));
  const auto us = panel_nodes(X, 2.0 * X, nu, rule), vs = panel_nodes(X, 2.0 * X, nv, rule);
  std::vector<cplx> rows(us.size());
  parallel_for(us.size(), [&](std::size_t i) {
    const double u = us[i].first;
    const double pu = weights::phi(u / X);
    cplx sum = 0.0;
    if (pu != 0.0) {
      for (const auto& [v, wv] : vs) {
        const double pv = weights::phi(v / X);
        if (pv == 0.0) continue;
        const double p = u * v;
        const double amp = pu * pv * s.h.eval(p, 0)[0];
        const double th = c.alpha * (std::pow(v, c.beta) - std::pow(u, c.beta)) + s.big_phi(p) -
                          (c.m * u + c.n * v) / s.q;
        sum += wv * amp * expi_turns(th);
      }
    }
    rows[i] = us[i].second * sum;
  });
  cplx out = 0.0;
  for (const auto& r : rows) out += r;
  return out;
}

// Chebyshev points of the second kind on [a, b] with barycentric weights.
struct ChebPanel {
  double a, b;
  std::vector<double> x, w;
  std::vector<cplx> f;

  ChebPanel(double lo, double hi, int n) : a(lo), b(hi), x(n + 1), w(n + 1), f(n + 1) {
    for (int j = 0; j <= n; ++j) {
      x[j] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * (n - j) / n);
      w[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
    }
  }

  cplx operator()(double t) const {
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double dt = t - x[j];
      if (dt == 0.0) return f[j];
      const double c = w[j] / dt;
      num += c * f[j];
      den += c;
    }
    return num / den;
  }
};

cplx j_product(const JSetup& s) {
  const PhaseContext& c = s.c;
  const double X = c.x, ab = c.alpha * c.beta;
  const double p0 = X * X, p1 = 4.0 * X * X;
  const auto& rule = quad::gauss_legendre(s.nodes);

  // Inner integral over u at fixed p = uv (dv = dp/u).
  auto inner = [&](double p) -> cplx {
    const double ua = std::max(X, p / (2.0 * X)), ub = std::min(2.0 * X, p / X);
    if (!(ub > ua)) return 0.0;
    const double rate = ab * (std::pow(p, c.beta) * std::pow(ua, -c.beta - 1.0) +
                              std::pow(ua, c.beta - 1.0)) +
                        std::abs(c.m) / s.q + std::abs(c.n) * p / (ua * ua * s.q);
    const int panels = std::max(4, static_cast<int>(std::ceil(rate * (ub - ua) / s.phase_turns)));
    const double w = (ub - ua) / panels;
    cplx sum = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double mid = ua + (i + 0.5) * w;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double u = mid + 0.5 * w * rule.nodes[k];
        const double v = p / u;
        const double amp = weights::phi(u / X) * weights::phi(v / X);
        if (amp == 0.0) continue;
        const double th =
            c.alpha * (std::pow(v, c.beta) - std::pow(u, c.beta)) - (c.m * u + c.n * v) / s.q;
        sum += 0.5 * w * rule.weights[k] * amp / u * expi_turns(th);
      }
    }
    return sum;
  };

  // The inner integral oscillates at most this fast in p (turns per unit).
  const double g_rate = ab * std::pow(X, c.beta - 2.0) + std::abs(c.n) / (X * s.q);
  const int refine = static_cast<int>(std::lround(std::log2(0.125 / s.phase_turns)));
  const int g_panels =
      std::max(32, static_cast<int>(std::ceil(2.0 * g_rate * (p1 - p0)))) << refine;
  const int cheb = 24 + 8 * refine;
  std::vector<ChebPanel> gp;
  gp.reserve(g_panels);
  for (int i = 0; i < g_panels; ++i) {
    gp.emplace_back(p0 + (p1 - p0) * i / g_panels, p0 + (p1 - p0) * (i + 1) / g_panels, cheb);
  }
  parallel_for(static_cast<std::size_t>(g_panels) * (cheb + 1), [&](std::size_t idx) {
    auto& panel = gp[idx / (cheb + 1)];
    const std::size_t j = idx % (cheb + 1);
    panel.f[j] = inner(panel.x[j]);
  });
  auto g_at = [&](double p) {
    const int i = std::clamp(static_cast<int>((p - p0) / (p1 - p0) * g_panels), 0, g_panels - 1);
    return gp[i](p);
  };

  // Outer panels in p: the local oscillation rate is decreasing in p.
  std::vector<double> breaks{p0};
  while (breaks.back() < p1) {
    const double p = breaks.back();
    const double rate = s.big_phi_rate(p) + g_rate;
    breaks.push_back(std::min(p1, p + s.phase_turns / rate));
  }
  const std::size_t np = breaks.size() - 1;
  constexpr std::size_t kBlock = 256;
  std::vector<cplx> part((np + kBlock - 1) / kBlock);
  parallel_for(part.size(), [&](std::size_t b) {
    cplx sum = 0.0;
    for (std::size_t i = b * kBlock; i < std::min(np, (b + 1) * kBlock); ++i) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]), hw = 0.5 * (breaks[i + 1] - breaks[i]);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double p = mid + hw * rule.nodes[k];
        const cplx g = g_at(p);
        if (g == cplx(0.0)) continue;
        sum += hw * rule.weights[k] * s.h.eval(p, 0)[0] * g * expi_turns(s.big_phi(p));
      }
    }
    part[b] = sum;
  });
  cplx out = 0.0;
  for (const auto& v : part) out += v;
  return out;
}

}  // namespace

cplx integral_j(const PhaseContext& ctx, const JOptions& opt) {
  const PhaseContext base = ctx.at(ctx.x, ctx.x);
  base.validate();
  if (opt.refine < 0 || opt.refine > 4) throw ValidationError("refine must lie in [0, 4]");
  if (!(base.r(1) > 0.0) || !(base.r(2) > 0.0)) {
    throw DomainError("R_j must be positive on [X, 2X]^2");
  }
  const JSetup s(base, opt.refine);
  return opt.route == JRoute::kTensor ? j_tensor(s) : j_product(s);
}

}  // namespace cusp::osc
