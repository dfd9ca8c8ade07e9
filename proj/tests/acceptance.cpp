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

// Acceptance run: one PASS/FAIL line per criterion (compound criteria get
// one line per part). Exit status 1 if any line fails.
//
//   cusp_acceptance [--only 1,5,7]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cusp/arith.hpp"
#include "cusp/bessel.hpp"
#include "cusp/coeffs.hpp"
#include "cusp/error.hpp"
#include "cusp/format.hpp"
#include "cusp/moments.hpp"
#include "cusp/oscillatory.hpp"
#include "cusp/petersson.hpp"
#include "cusp/resonance.hpp"
#include "fixtures.hpp"

using namespace cusp;

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

void report(const std::string& id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s %-3s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& id, const std::string& detail) {
  std::printf("INFO %-3s %s\n", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

// Runs body; a library error becomes a FAIL line for that part.
void guarded(const std::string& id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    report(id, name, false, std::string(error_kind_name(e.kind())) + " error: " + e.what());
  }
}

const coeffs::CoefficientTable& delta_table() {
  static const auto t = coeffs::eigenforms(12, std::size_t{1} << 18).at(0);
  return t;
}

std::vector<double> x_grid(int lo, int hi) {
  std::vector<double> xs;
  for (int e = lo; e <= hi; ++e) xs.push_back(std::ldexp(1.0, e));
  return xs;
}

// 1. omega fitted at (1, 1); residual over 2 <= m, n <= 20.
void petersson_residual() {
  guarded("1", "petersson residual", [] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int k : {12, 16, 18, 20, 22, 26}) {
      if (petersson::default_fit_cap(k) != 1) throw DomainError("fit cap is not (1, 1)");
      for (const auto& r : petersson::petersson_table(k, 20)) {
        if (r.m >= 2 && r.n >= 2) worst = std::max(worst, r.residual);
      }
    }
    const double t = seconds_since(t0);
    report("1", "petersson residual", worst <= 1e-8 && t <= 60.0,
           "max residual " + fmt(worst) + " (<= 1e-8), " + fmt(t) + " s (<= 60 s)");
  });
}

// 2. Spectral side against D00 + D01 + D10 + D11.
void moment_identity() {
  guarded("2", "moment identity", [] {
    double worst = 0.0, slowest = 0.0;
    for (double alpha : {1.0, 2.5}) {
      for (double beta : {0.25, 0.5, 1.0}) {
        moments::MomentWindow w;
        w.k1 = w.k2 = 18;
        w.l1 = w.l2 = 4;
        w.x = 32;
        w.alpha = alpha;
        w.beta = beta;
        const auto t0 = Clock::now();
        const auto b = moments::moment_geometric(w, moments::kDefaultAccuracy, true);
        slowest = std::max(slowest, seconds_since(t0));
        worst = std::max(worst, b.relative_residual());
      }
    }
    report("2", "moment identity", worst <= 1e-6 && slowest <= 300.0,
           "max relative residual " + fmt(worst) + " (<= 1e-6), slowest " + fmt(slowest) +
               " s (<= 300 s)");
  });
}

// 3. Single form, beta = 1/2.
void single_exponent() {
  guarded("3", "single-form resonance exponent", [] {
    const auto& f = delta_table();
    const auto xs = x_grid(10, 17);
    bool ok = true;
    std::string detail;
    for (int q = 1; q <= 3; ++q) {
      const auto fit = resonance::exponent_fit(f, nullptr, 2.0 * std::sqrt(q), 0.5, xs);
      ok = ok && fit.slope >= 0.70 && fit.slope <= 0.80;
      detail += "q=" + std::to_string(q) + " slope " + fmt(fit.slope) + ", ";
    }
    const auto off = resonance::exponent_fit(f, nullptr, 2.7, 0.5, xs);
    ok = ok && off.slope <= 0.60;
    report("3", "single-form resonance exponent", ok,
           detail + "in [0.70, 0.80]; alpha=2.7 slope " + fmt(off.slope) + " (<= 0.60)");
  });
}

// 4. Pair f = g = Delta, beta = 1/4.
void pair_exponent() {
  const auto& f = delta_table();
  guarded("4a", "pair resonance exponent", [&] {
    const auto xs = x_grid(10, 17);
    bool ok = true;
    std::string detail;
    for (int q = 1; q <= 2; ++q) {
      const auto fit = resonance::exponent_fit(f, &f, 4.0 * std::pow(q, 0.25), 0.25, xs);
      ok = ok && fit.slope >= 0.575 && fit.slope <= 0.675;
      detail += "q=" + std::to_string(q) + " slope " + fmt(fit.slope) + ", ";
    }
    report("4a", "pair resonance exponent", ok, detail + "required in [0.575, 0.675]");
  });
  guarded("4b", "pair resonance peaks", [&] {
    const double step = 0.01;
    const auto alphas = resonance::alpha_grid(3.5, 6.5, 301);
    const auto rows = resonance::resonance_scan(f, &f, 0.25, alphas, 65536.0);
    const auto peaks = resonance::top_peaks(rows, 4);
    std::vector<double> locs;
    for (const auto& p : peaks) locs.push_back(p.alpha);
    bool ok = true;
    std::string detail = std::to_string(peaks.size()) + " peaks (" ;
    for (double a : locs) detail += fmt(a) + " ";
    detail += "); targets ";
    for (int q = 1; q <= 4; ++q) {
      const double target = 4.0 * std::pow(q, 0.25);
      const bool hit = std::any_of(locs.begin(), locs.end(), [&](double a) {
        return std::abs(a - target) <= step + 1e-12;
      });
      ok = ok && hit;
      detail += fmt(target) + (hit ? "(hit) " : "(miss) ");
    }
    double top = 0.0;
    for (const auto& r : rows) top = std::max(top, r.abs);
    report("4b", "pair resonance peaks", ok, detail + "at X=2^16, step 0.01, max |S| " + fmt(top));
  });
}

// 5. W: negligibility below 8 pi K^0.9 L, and the main-term remainder.
void w_checks() {
  const int k = 60;
  const double l = 8.0;
  guarded("5a", "W negligibility", [&] {
    const double top = 8.0 * kPi * std::pow(k, 0.9) * l;
    double worst = 0.0, at = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double x = top * i / 50.0;
      for (int eta : {1, -1}) {
        const double w = std::abs(osc::w_bessel(k, l, eta, x));
        if (w > worst) {
          worst = w;
          at = x;
        }
      }
    }
    report("5a", "W negligibility", worst <= 1e-6,
           "max |W| " + fmt(worst) + " at x=" + fmt(at) + " on 50 points up to " + fmt(top) +
               " (<= 1e-6)");
  });
  guarded("5b", "W main-term remainder", [&] {
    double c_fit = 0.0;
    for (int i = 0; i <= 48; ++i) {
      const double x = 2000.0 * std::pow(50.0, i / 48.0);
      for (int eta : {1, -1}) {
        const auto w = osc::w_bessel(k, l, eta, x);
        c_fit = std::max(c_fit, std::abs(w - osc::w_main_term(k, l, eta, x)) * x / (l * l));
      }
    }
    // The grid uses the exact Bessel form; the quadrature must agree with it.
    double spot = 0.0;
    for (double x : {2000.0, 20000.0}) {
      spot = std::max(spot, std::abs(osc::w_integral(k, l, 1, x) - osc::w_bessel(k, l, 1, x)));
    }
    report("5b", "W main-term remainder", c_fit <= 10.0 && spot <= 1e-9,
           "C = " + fmt(c_fit) + " over x in [2000, 1e5] (<= 10); quadrature vs Bessel form " +
               fmt(spot));
  });
}

// 6. Second derivative test.
void derivative_checks() {
  guarded("6a", "derivative test, quadratic preset", [] {
    double worst = 0.0;
    for (double n : {10.0, 100.0, 1000.0}) {
      worst = std::max(worst, osc::second_derivative_test(osc::quadratic_problem(n)).ratio);
    }
    report("6a", "derivative test, quadratic preset", worst <= 10.0,
           "max ratio " + fmt(worst) + " for N in {10, 100, 1000} (<= 10)");
  });
  guarded("6b", "derivative test, J preset", [] {
    struct Case {
      int c1, c2, eta2;
    };
    const Case cases[] = {{1, 1, 1}, {1, 2, 1}, {2, 3, 1}, {1, 2, -1}, {2, 3, -1}};
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    for (const auto& cs : cases) {
      osc::PhaseContext ctx;
      ctx.c1 = cs.c1;
      ctx.c2 = cs.c2;
      ctx.eta2 = cs.eta2;
      const std::string tag = "(" + std::to_string(cs.c1) + "," + std::to_string(cs.c2) + "," +
                              (cs.eta2 > 0 ? "+" : "-") + ")";
      try {
        const auto r = osc::second_derivative_test(osc::j_integral_problem(ctx));
        worst = std::max(worst, r.ratio);
        ok = ok && r.ratio <= 10.0;
        detail += tag + " " + fmt(r.ratio) + " ";
      } catch (const HypothesisError& e) {
        ok = false;
        detail += tag + " hypotheses fail ";
      }
    }
    report("6b", "derivative test, J preset", ok,
           "K=40, L=8, X=5000, d=1, m=n=0; ratios " + detail + "(<= 10)");
  });
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

// 7. Identity and property suites.
void properties() {
  guarded("7a", "Hecke relations and Deligne bound", [] {
    const std::size_t n = 10000;
    double worst = 0.0, worst_p = 0.0;
    for (int k : {12, 16, 18, 20, 22, 24, 26}) {
      for (const auto& f : coeffs::eigenforms(k, n)) {
        for (std::size_t p = 2; p <= n; ++p) {
          if (!is_prime(p)) continue;
          worst_p = std::max(worst_p, std::abs(f.lambda(p)));
          for (std::size_t q = p; q * p <= n; q *= p) {
            const double rec = f.lambda(p) * f.lambda(q) - f.lambda(q / p);
            worst = std::max(worst, std::abs(f.lambda(q * p) - rec));
          }
        }
        for (std::size_t a = 2; a * a < n; ++a) {
          for (std::size_t b = a + 1; a * b <= n; ++b) {
            if (arith::gcd(a, b) != 1) continue;
            worst = std::max(worst, std::abs(f.lambda(a * b) - f.lambda(a) * f.lambda(b)));
          }
        }
      }
    }
    report("7a", "Hecke relations and Deligne bound", worst <= 1e-9 && worst_p <= 2.0,
           "k in {12..26}, N=1e4: max Hecke defect " + fmt(worst) + " (<= 1e-9), max |lambda(p)| " +
               fmt(worst_p) + " (<= 2)");
  });

  guarded("7b", "Kloosterman symmetry, realness, Weil bound", [] {
    const int64_t cmax = 10000;
    double weil = 0.0, asym = 0.0, imag = 0.0, twist = 0.0;
    const std::pair<int64_t, int64_t> mn[] = {{1, 1}, {1, 5}, {3, 12}, {7, 30}, {0, 4}};
    for (int64_t c = 1; c <= cmax; ++c) {
      for (auto [m, n] : mn) {
        const double s = arith::kloosterman(m, n, c);
        asym = std::max(asym, std::abs(s - arith::kloosterman(n, m, c)));
        weil = std::max(weil, std::abs(s) / arith::weil_bound(m, n, c));
      }
      if (c % 7 == 0 || c < 500) {
        imag = std::max(imag, std::abs(arith::kloosterman_complex(2, 9, c).imag()) / c);
      }
    }
    for (int64_t c1 = 2; c1 <= 100; c1 += 3) {
      for (int64_t c2 = c1 + 1; c1 * c2 <= cmax; c2 += 11) {
        if (arith::gcd(c1, c2) != 1) continue;
        const int64_t i2 = *arith::mod_inverse(c2, c1), i1 = *arith::mod_inverse(c1, c2);
        const double lhs = arith::kloosterman(1, 5, c1 * c2);
        const double rhs =
            arith::kloosterman(i2, 5 * i2, c1) * arith::kloosterman(i1, 5 * i1, c2);
        twist = std::max(twist, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      }
    }
    const bool ok = weil <= 1.0 + 1e-12 && asym <= 1e-9 && imag <= 1e-9 && twist <= 1e-8;
    report("7b", "Kloosterman symmetry, realness, Weil bound", ok,
           "c <= 1e4: max |S|/Weil " + fmt(weil) + ", max |S(m,n)-S(n,m)| " + fmt(asym) +
               ", max |Im|/c " + fmt(imag) + ", twisted multiplicativity " + fmt(twist));
  });

  guarded("7c", "quadratic congruence counts", [] {
    double worst = 0.0;
    for (int64_t c = 1; c <= 10000; ++c) {
      for (int eta : {1, -1}) {
        worst = std::max(worst, arith::count_quadratic_congruence(c, eta) /
                                    std::sqrt(static_cast<double>(c)));
      }
    }
    report("7c", "quadratic congruence counts", worst <= 1.0,
           "max count/sqrt(c) " + fmt(worst) + " for c <= 1e4 (<= 1)");
  });

  guarded("7d", "lattice counts vs stated bound", [] {
    const double taus[] = {0.5, 1, 2, 3, 5, 8, 12, 20, 30, 50};
    long cases = 0, stated_bad = 0, corrected_bad = 0;
    double worst = 0.0;
    std::string example;
    for (int64_t c1 = 1; c1 <= 20; ++c1) {
      for (int64_t c2 = 1; c2 <= 20; ++c2) {
        if (arith::gcd(c1, c2) != 1) continue;
        for (int64_t d = 1; d <= 10; ++d) {
          for (double tau : taus) {
            const auto count = static_cast<double>(arith::count_lattice_solutions(c1, c2, d, tau));
            const double stated = arith::lattice_solution_bound(c1, c2, d, tau);
            ++cases;
            if (count > stated) {
              ++stated_bad;
              if (count / stated > worst) {
                worst = count / stated;
                example = "(c1,c2,d,tau)=(" + std::to_string(c1) + "," + std::to_string(c2) +
                          "," + std::to_string(d) + "," + fmt(tau) + ") count " + fmt(count) +
                          " > " + fmt(stated);
              }
            }
            if (count > arith::lattice_solution_bound_corrected(c1, c2, d, tau)) ++corrected_bad;
          }
        }
      }
    }
    report("7d", "lattice counts vs stated bound", stated_bad == 0,
           std::to_string(stated_bad) + " of " + std::to_string(cases) +
               " cases exceed the stated bound" + (example.empty() ? "" : ", worst " + example));
    info("7d", "corrected bound d(2tau+1)(floor(2tau/(c1c2d))+1): " +
                   std::to_string(corrected_bad) + " violations");
  });

  guarded("7e", "Hessian multi-form residual", [] {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      worst = std::max(worst, osc::hessian_identity_check(testing::random_context(rng)));
    }
    report("7e", "Hessian multi-form residual", worst <= 1e-10,
           "max " + fmt(worst) + " over 100 random points (<= 1e-10)");
  });

  guarded("7f", "finite-difference derivative checks", [] {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const osc::PhaseContext c = testing::random_context(rng);
      const osc::ThetaDerivs t = osc::theta_derivs(c);
      const double h = 1e-4 * c.x;
      auto th = [&](double u, double v) { return osc::theta(u, v, c); };
      const double fu = (th(c.u + h, c.v) - th(c.u - h, c.v)) / (2 * h);
      const double fv = (th(c.u, c.v + h) - th(c.u, c.v - h)) / (2 * h);
      const double fuu = (th(c.u + h, c.v) - 2 * th(c.u, c.v) + th(c.u - h, c.v)) / (h * h);
      const double fvv = (th(c.u, c.v + h) - 2 * th(c.u, c.v) + th(c.u, c.v - h)) / (h * h);
      const double fuv = (th(c.u + h, c.v + h) - th(c.u + h, c.v - h) - th(c.u - h, c.v + h) +
                          th(c.u - h, c.v - h)) /
                         (4 * h * h);
      // Relative to the summed magnitudes of the terms in each partial.
      double su = 0, sv = 0;
      for (double x : t.uterms) su += std::abs(x);
      for (double x : t.vterms) sv += std::abs(x);
      const double suv = (std::abs(t.uterms[3]) + std::abs(t.uterms[4])) * c.u / c.v;
      const double q = static_cast<double>(c.c1) * c.c2 * c.d;
      const double s1 = c.alpha * c.beta * std::pow(c.u, c.beta - 1) +
                        (std::sqrt(c.r(1)) + std::sqrt(c.r(2))) / (4 * kPi * c.u) +
                        std::abs(c.m) / q;
      const double s2 = c.alpha * c.beta * std::pow(c.v, c.beta - 1) +
                        (std::sqrt(c.r(1)) + std::sqrt(c.r(2))) / (4 * kPi * c.v) +
                        std::abs(c.n) / q;
      worst = std::max({worst, std::abs(fu - t.du) / s1, std::abs(fv - t.dv) / s2,
                        std::abs(fuu - t.duu) / su, std::abs(fvv - t.dvv) / sv,
                        std::abs(fuv - t.duv) / suv});
    }
    report("7f", "finite-difference derivative checks", worst <= 1e-6,
           "max relative error " + fmt(worst) + " over 100 random contexts (<= 1e-6)");
  });
}

// 8. Bessel: oracle grid, recurrence, normalization.
void bessel_accuracy() {
  guarded("8", "Bessel accuracy", [] {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> order(0, 200);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double cross = 0, rec = 0, norm = 0;
    for (int i = 0; i < 500; ++i) {
      const int nu = order(rng);
      const double u = unit(rng);
      // Half uniform in [0, 5000], half clustered around the turning point x ~ nu.
      const double x = i % 2 ? 5000.0 * u : std::min(5000.0, nu * (0.3 + 1.4 * u) + 1e-3);
      const double j = bessel::bessel_j(nu, x);
      cross = std::max(cross, std::abs(j - bessel::bessel_j_oracle(nu, x)) / std::max(1.0, std::abs(j)));
      if (x >= 1.0 && nu >= 1) {
        rec = std::max(rec, std::abs(bessel::bessel_j(nu - 1, x) + bessel::bessel_j(nu + 1, x) -
                                     (2.0 * nu / x) * j));
      }
    }
    for (double x : {0.5, 7.0, 99.0, 640.0, 1234.5, 2000.0}) {
      const int kmax = static_cast<int>(x) + 50;
      double s = bessel::bessel_j(0, x);
      for (int k = 1; k <= kmax; ++k) s += 2.0 * bessel::bessel_j(2 * k, x);
      norm = std::max(norm, std::abs(s - 1.0));
    }
    report("8", "Bessel accuracy", cross <= 1e-8 && rec <= 1e-8 && norm <= 1e-8,
           "500-point grid: oracle " + fmt(cross) + ", recurrence " + fmt(rec) +
               ", normalization " + fmt(norm) + " (each <= 1e-8)");
  });
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(item);
    } else {
      std::fprintf(stderr, "usage: %s [--only 1,2,...]\n", argv[0]);
      return 2;
    }
  }
  const std::pair<std::string, void (*)()> criteria[] = {
      {"1", petersson_residual}, {"2", moment_identity}, {"3", single_exponent},
      {"4", pair_exponent},      {"5", w_checks},         {"6", derivative_checks},
      {"7", properties},         {"8", bessel_accuracy},
  };
  const auto t0 = Clock::now();
  for (const auto& [id, run] : criteria) {
    if (only.empty() || only.count(id)) run();
  }
  std::printf("%d failing line(s), %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
