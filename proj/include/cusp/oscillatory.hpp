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

// Bessel-window transforms V and W, their stationary-phase main term, and
// the phase/amplitude algebra of the off-diagonal integrals J together
// with the two-dimensional second derivative test.

#include <array>
#include <complex>
#include <functional>
#include <string>

namespace cusp::osc {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// V and W

/// sum over even k of i^k g0((k - K)/L) J_{k-1}(x); J_{-n} = (-1)^n J_n.
cplx v_sum(double k, double l, double x);

/// Finite Bessel form of W for integer K:
/// sum over all integers k of g0((k - K)/L) (-i eta)^{k-1} J_{k-1}(x).
/// Follows from periodizing g0_hat in the integral; exact, and fast.
cplx w_bessel(int k, double l, int eta, double x);

struct WOptions {
  double abs_tol = 1e-10;
  double panel_phase = 0.785398163397448310;  // pi/4 radians per panel
  double envelope_floor = 1e-16;              // drop t with |g0_hat| below this
};

/// int g0_hat(t) e(-(K - 1) t / L - (eta x / 2 pi) cos(2 pi t / L)) dt by
/// adaptive Gauss-Kronrod on panels of bounded phase increment.
cplx w_integral(double k, double l, int eta, double x, const WOptions& opt = {});

/// Range |t| <= T outside which |g0_hat(t)| stays below floor.
double g0_hat_envelope_range(double floor);

enum class MainTermForm {
  kCorrected,  // e(eta/8) L (2 pi)^{-1/2} ..., phase -(eta/2 pi) sqrt(x^2 - (K-1)^2)
  kAlternative,  // e(1/8) eta^{-1/2} pi^{-1/2} L ..., phase -(eta/2) sqrt(x^2 - (K-1)^2)
};

/// nu = 0 stationary-phase term of W(eta x). Requires x > K - 1.
cplx w_main_term(double k, double l, int eta, double x,
                 MainTermForm form = MainTermForm::kCorrected);

enum class VSign {
  kCorrected,  // V = (i/2)(W(-x) - W(x))
  kAlternative,  // V = (1/2i)(W(-x) - W(x)), off by an overall sign
};

/// V recovered from the two W integrals.
cplx v_from_w(double k, double l, double x, VSign sign = VSign::kCorrected,
              const WOptions& opt = {});

// ---------------------------------------------------------------------------
// Phase and amplitude of the transformed sums

/// -(eta/2 pi) sqrt(16 pi^2 mn/c^2 - (K-1)^2)
///   - (eta (K-1)/2 pi) arcsin((K-1) c / (4 pi sqrt(mn))).
/// m, n may be continuous. DomainError unless 16 pi^2 mn/c^2 > (K-1)^2.
double phase_phi(double m, double n, double c, double k, int eta);

/// g0_hat((eta L/2 pi) arcsin((K-1) c/(4 pi sqrt(mn)))) (16 pi^2 mn/c^2 - (K-1)^2)^{-1/4}.
double amplitude_h(double m, double n, double c, double k, double l, int eta);

struct PhaseContext {
  double u = 0.0, v = 0.0;
  int c1 = 1, c2 = 1, d = 1;
  int eta1 = 1, eta2 = 1;
  double k1 = 40.0, k2 = 40.0;
  double l1 = 8.0, l2 = 8.0;  // only the amplitude uses L
  double m = 0.0, n = 0.0;
  double alpha = 1.0, beta = 0.5;
  double x = 5000.0;  // X of the cutoff phi(u/X) phi(v/X)

  void validate() const;
  PhaseContext at(double uu, double vv) const;
  /// 16 pi^2 uv/(c_j^2 d^2) - (K_j - 1)^2.
  double r(int j) const;
};

/// alpha v^beta - alpha u^beta + phi_1(u, v, c1 d) + phi_2(u, v, c2 d)
///   - (m u + n v)/(c1 c2 d).
double theta(double u, double v, const PhaseContext& ctx);

struct ThetaDerivs {
  double value = 0, du = 0, dv = 0, duu = 0, dvv = 0, duv = 0;
  /// Hessian determinant from the grouped form
  /// U1 V1 + U1 (V2+..+V5) + V1 (U2+..+U5) + (UV2-5), with the last group
  /// in its (K-1)^2 form. No cancellation of large terms.
  double det = 0;
  std::array<double, 5> uterms{}, vterms{};  // theta_uu = sum U_i, theta_vv = sum V_i
};

/// Closed-form partials. DomainError when some R_j <= 0.
ThetaDerivs theta_derivs(const PhaseContext& ctx);

/// The (UV2-5) group in each of its algebraic forms.
struct HessianForms {
  double expanded = 0;   // (U2+U3)(V2+..+V5) + (U4+U5)(V2+V3)
  double s_t = 0;        // S^2/(16 pi^2 u^2 v^2) - S T/(u v d^2)
  double k_form = 0;     // -S/(16 pi^2 u^2 v^2) (eta1 (K1-1)^2/sqrt R1 + eta2 (K2-1)^2/sqrt R2)
  double diff_sq = 0;    // (K-1)^2 (sqrt R1 - sqrt R2)^2/(16 pi^2 u^2 v^2 sqrt(R1 R2)); NaN if n/a
  double diff_ratio = 0; // same via (R1 - R2)/(sqrt R1 + sqrt R2); NaN if n/a
  double det_direct = 0; // theta_uu theta_vv - theta_uv^2
  double det_grouped = 0;
  double scale = 0;      // term magnitude entering the (UV2-5) forms
  double scale_det = 0;  // |theta_uu theta_vv| + theta_uv^2
};

HessianForms hessian_forms(const PhaseContext& ctx);

/// Largest pairwise difference among the available forms of (UV2-5) and of
/// the determinant, relative to HessianForms::scale.
double hessian_identity_check(const PhaseContext& ctx);

struct IdentityCheck {
  double direct = 0;     // sqrt R/(4 pi u^2) - 2 pi v/(u c^2 d^2 sqrt R)
  double combined = 0;   // (2 pi v/(u c^2 d^2) - (K-1)^2/(4 pi u^2)) / sqrt R
  double asymptotic = 0; // sqrt(v/u) / (2 c d u)
  double helper_direct = 0;  // sqrt R/(16 pi^2 u^2 v^2) - 1/(u v c^2 d^2 sqrt R)
  double helper_k_form = 0;  // -(K-1)^2/(16 pi^2 u^2 v^2 sqrt R)
};

/// The per-j identities behind the grouped forms (j = 1, 2).
IdentityCheck identity_check(const PhaseContext& ctx, int j);

struct Bracket {
  double value = 0, lo = 0, hi = 0;
  bool inside() const { return lo <= value && value <= hi; }
};

/// |eta1 sqrt R1 + eta2 sqrt R2|/(4 pi u) against
/// [s/(sqrt2 d c1 c2), sqrt2 s/(d c1 c2)], s = c1 + c2 (eta1 = eta2) or
/// |c1 - c2| (otherwise).
Bracket middle_term_bracket(const PhaseContext& ctx);

/// a(u, v) = phi(v/X) phi(u/X) h_1(uv) h_2(uv) and its mixed partial.
double amplitude_a(double u, double v, const PhaseContext& ctx);
double amplitude_a_uv(double u, double v, const PhaseContext& ctx);

// ---------------------------------------------------------------------------
// Derivative tests

struct Domain {
  double u0 = 1, u1 = 2, v0 = 1, v1 = 2;
};

struct Hessian {
  double uu = 0, vv = 0, uv = 0, det = 0;
};

/// An integral of a(u, v) e(theta(u, v)) over a box, with what the second
/// derivative test needs: the amplitude's mixed partial, the phase Hessian,
/// and a routine that evaluates the integral itself.
struct DerivativeProblem {
  std::string name;
  Domain domain;
  double r1 = 0, r2 = 0;
  std::function<double(double, double)> a_uv;
  std::function<Hessian(double, double)> hessian;
  std::function<cplx()> integral;
  double hypothesis_floor = 1.0;  // required: |theta_uu| >= floor r1^2, etc.
};

struct DerivativeTestReport {
  double r1 = 0, r2 = 0;
  double var_a = 0;
  double bound = 0;  // var_a / (r1 r2)
  double measured = 0;
  double ratio = 0;  // measured / bound; infinite when degenerate
  bool degenerate = false;  // var_a = 0: the bound says nothing
  // Smallest observed |theta_uu|/r1^2, |theta_vv|/r2^2, |det|/(r1 r2)^2.
  double kappa_uu = 0, kappa_vv = 0, kappa_det = 0;
  bool hypotheses_hold = false;
};

struct DerivativeTestOptions {
  int hypothesis_grid = 33;  // points per side of the hypothesis grid
  int var_panels = 32;       // Gauss-Legendre panels per side for var(a)
  int var_nodes = 12;
  bool require_hypotheses = true;  // throw HypothesisError on failure
};

DerivativeTestReport second_derivative_test(const DerivativeProblem& p,
                                            const DerivativeTestOptions& opt = {});

/// a = uv, theta = N(u^2 + v^2) on [1, 2]^2, r1 = r2 = sqrt(2N).
DerivativeProblem quadratic_problem(double n);

/// a constant on [1, 2]^2 with the quadratic phase; var(a) = 0.
DerivativeProblem constant_amplitude_problem(double n);

/// Floor for the J preset: the (K-1)^2 group of the determinant sits
/// between r1^2 r2^2/(256 pi^2) and r1^2 r2^2/(16 pi^2) on [X, 2X]^2.
inline constexpr double kJHypothesisFloor = 1e-4;

/// The J integrand of ctx over [X, 2X]^2, with r1 = r2 =
/// K^{1/2} s^{1/2} (c1 c2)^{-1/4} / X, s = c1 + c2 (eta1 = eta2) or
/// |c1 - c2| (eta1 != eta2); uses K = max(K1, K2). The u, v fields of ctx
/// are ignored.
DerivativeProblem j_integral_problem(const PhaseContext& ctx);

struct FirstDerivativeResult {
  double factor = 0;  // M / (T N)
  double budget = 0;  // length U factor^{n0 + 1}
  bool negligible = false;
};

/// First derivative test budget for int g e(f) with g^{(j)} << U N^{-j}
/// and |f'| >= T/M: negligible when factor < 1 and the budget is below
/// threshold.
FirstDerivativeResult first_derivative_negligibility(double u, double n, double t, double m,
                                                     double threshold, int n0 = 10,
                                                     double length = 1.0);

enum class JRoute {
  kProduct,   // p = uv substitution; the R_j-dependent factors are 1-D in p
  kTensor,    // direct tensor Gauss-Legendre over u and v (small X only)
};

struct JOptions {
  JRoute route = JRoute::kProduct;
  int refine = 0;  // each level halves the panel phase and adds GL nodes
};

/// int int a(u, v) e(theta(u, v)) du dv over [X, 2X]^2.
cplx integral_j(const PhaseContext& ctx, const JOptions& opt = {});

}  // namespace cusp::osc
