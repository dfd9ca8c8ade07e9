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

// cusp: command-line front end. Every parameter lives in an
// ExperimentConfig; --config loads one, explicit flags override it, and
// --save-config writes the effective configuration back out.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cusp/arith.hpp"
#include "cusp/bessel.hpp"
#include "cusp/coeffs.hpp"
#include "cusp/config.hpp"
#include "cusp/error.hpp"
#include "cusp/format.hpp"
#include "cusp/moments.hpp"
#include "cusp/oscillatory.hpp"
#include "cusp/parallel.hpp"
#include "cusp/petersson.hpp"
#include "cusp/resonance.hpp"
#include "report.hpp"

namespace {

using cusp::ExperimentConfig;
using cusp::ValidationError;
using cusp::cli::Cell;
using cusp::cli::Report;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

int exit_code(cusp::ErrorKind kind) {
  switch (kind) {
    case cusp::ErrorKind::kAccuracy:
    case cusp::ErrorKind::kCapacity:
    case cusp::ErrorKind::kConditioning:
    case cusp::ErrorKind::kDiagonalization:
    case cusp::ErrorKind::kFit:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

// Flag values captured from the command line, keyed by config key.
struct FlagSet {
  std::map<std::string, std::string> text;
  std::map<std::string, bool> flags;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void value(CLI::App* app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option("--" + key, text[key], help));
  }
  void flag(CLI::App* app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_flag("--" + key, flags[key], help));
  }

  void overlay(ExperimentConfig& cfg) const {
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      const auto f = flags.find(key);
      cfg.set(key, f != flags.end() ? std::string(f->second ? "true" : "false") : text.at(key));
    }
  }
};

// Typed access to the effective configuration.
class Params {
 public:
  explicit Params(const ExperimentConfig& cfg) : cfg_(cfg) {}

  double num(const std::string& key) const {
    require(key);
    return cfg_.get_double(key, 0.0);
  }
  double num(const std::string& key, double fallback) const { return cfg_.get_double(key, fallback); }
  int integer(const std::string& key) const {
    require(key);
    return narrow(key, cfg_.get_int(key, 0));
  }
  int integer(const std::string& key, int fallback) const {
    return narrow(key, cfg_.get_int(key, fallback));
  }
  int64_t wide(const std::string& key) const {
    require(key);
    return cfg_.get_int(key, 0);
  }
  bool flag(const std::string& key) const { return cfg_.get_bool(key, false); }
  bool has(const std::string& key) const { return cfg_.has(key); }
  std::string text(const std::string& key, const std::string& fallback) const {
    return cfg_.get(key, fallback);
  }
  std::vector<double> list(const std::string& key) const {
    require(key);
    return cfg_.get_list(key, {});
  }

 private:
  void require(const std::string& key) const {
    if (!cfg_.has(key)) throw ValidationError("missing required parameter --" + key);
  }
  static int narrow(const std::string& key, int64_t v) {
    if (v < -(int64_t{1} << 30) || v > (int64_t{1} << 30)) {
      throw ValidationError("parameter --" + key + " out of range");
    }
    return static_cast<int>(v);
  }

  const ExperimentConfig& cfg_;
};

struct Outcome {
  Report report;
  bool json_default = false;
  int exit = kExitOk;  // nonzero after a reported check failure
  std::string failure;
};

using Handler = std::function<Outcome(const Params&)>;

cusp::coeffs::CoefficientTable pick_form(int weight, std::size_t n, int form) {
  auto forms = cusp::coeffs::eigenforms(weight, n);
  if (forms.empty()) throw cusp::DomainError("S_" + std::to_string(weight) + " is zero");
  if (form < 1 || form > static_cast<int>(forms.size())) {
    throw ValidationError("--form must lie in 1.." + std::to_string(forms.size()));
  }
  return std::move(forms[form - 1]);
}

Outcome run_coeffs(const Params& p) {
  const int weight = p.integer("weight");
  const int n = p.integer("n", 100);
  const int form = p.integer("form", 1);
  if (n < 1) throw ValidationError("--n must be positive");
  const auto forms = cusp::coeffs::eigenforms(weight, static_cast<std::size_t>(n));
  if (forms.empty()) throw cusp::DomainError("S_" + std::to_string(weight) + " is zero");
  if (form < 1 || form > static_cast<int>(forms.size())) {
    throw ValidationError("--form must lie in 1.." + std::to_string(forms.size()));
  }
  const auto& t = forms[form - 1];
  Outcome o;
  o.report.command = "coeffs";
  o.report.columns = {"n", "a_n", "lambda_n"};
  for (std::size_t i = 1; i <= t.max_index(); ++i) {
    const std::string a = t.exact() ? t.a()[i].get_str() : cusp::format_long_double(t.a_approx(i));
    o.report.add_row({static_cast<int64_t>(i), Cell(a), t.lambda(i)});
  }
  o.report.summary = {{"weight", int64_t{weight}},
                      {"form", int64_t{form}},
                      {"dimension", static_cast<int64_t>(forms.size())},
                      {"exact", t.exact()}};
  return o;
}

Outcome run_kloosterman(const Params& p) {
  const int64_t m = p.wide("m");
  const int64_t n = p.wide("n");
  const int64_t c_max = p.wide("c-max");
  if (c_max < 1) throw ValidationError("--c-max must be positive");
  Outcome o;
  o.report.command = "kloosterman";
  o.report.columns = {"m", "n", "c", "value", "weil_bound"};
  double worst = 0.0;
  for (int64_t c = 1; c <= c_max; ++c) {
    const double s = cusp::arith::kloosterman(m, n, c);
    const double w = cusp::arith::weil_bound(m, n, c);
    worst = std::max(worst, std::abs(s) / w);
    o.report.add_row({m, n, c, s, w});
  }
  o.report.summary = {{"max_weil_ratio", worst}};
  return o;
}

Outcome run_bessel(const Params& p) {
  const int order = p.integer("order");
  const auto xs = p.list("x");
  const bool oracle = p.flag("oracle");
  Outcome o;
  o.report.command = "bessel";
  o.report.columns = {"order", "x", "j"};
  if (oracle) {
    o.report.columns.push_back("oracle");
    o.report.columns.push_back("difference");
  }
  double worst = 0.0;
  for (double x : xs) {
    const double j = cusp::bessel::bessel_j(order, x);
    std::vector<Cell> row{int64_t{order}, x, j};
    if (oracle) {
      const double r = cusp::bessel::bessel_j_oracle(order, x);
      worst = std::max(worst, std::abs(j - r));
      row.push_back(r);
      row.push_back(j - r);
    }
    o.report.add_row(std::move(row));
  }
  if (oracle) o.report.summary = {{"max_difference", worst}};
  return o;
}

Outcome run_petersson(const Params& p) {
  const int weight = p.integer("weight");
  const int cap = p.integer("max-mn", 20);
  const auto rows = cusp::petersson::petersson_table(weight, cap);
  Outcome o;
  o.report.command = "petersson verify";
  o.report.columns = {"m", "n", "spectral", "geometric", "residual"};
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.residual);
    o.report.add_row({r.m, r.n, r.spectral, r.geometric, r.residual});
  }
  o.report.summary = {{"weight", int64_t{weight}}, {"max_residual", worst}};
  return o;
}

struct FormPair {
  cusp::coeffs::CoefficientTable f;
  std::optional<cusp::coeffs::CoefficientTable> g;
};

FormPair resonance_forms(const Params& p, double x_max) {
  const auto last = cusp::resonance::support(x_max).last;
  const std::size_t n = static_cast<std::size_t>(std::max(1L, last));
  FormPair forms{pick_form(p.integer("weight1", 12), n, p.integer("form1", 1)), std::nullopt};
  if (p.has("weight2")) forms.g = pick_form(p.integer("weight2"), n, p.integer("form2", 1));
  return forms;
}

Outcome run_resonance_scan(const Params& p) {
  const double beta = p.num("beta");
  const double x = p.num("x");
  const double a0 = p.num("alpha-min");
  const double a1 = p.num("alpha-max");
  const int steps = p.integer("steps");
  const double peak_factor = p.num("peak-factor", cusp::resonance::kDefaultPeakFactor);
  cusp::resonance::ResonanceParams{1.0, beta, x}.validate();
  const auto alphas = cusp::resonance::alpha_grid(a0, a1, steps);
  const FormPair forms = resonance_forms(p, x);
  const auto rows = cusp::resonance::resonance_scan(forms.f, forms.g ? &*forms.g : nullptr, beta,
                                                    alphas, x, peak_factor);
  Outcome o;
  o.report.command = "resonance scan";
  o.report.columns = {"alpha", "re", "im", "abs", "peak"};
  int64_t peaks = 0;
  double top = 0.0;
  for (const auto& r : rows) {
    peaks += r.peak ? 1 : 0;
    top = std::max(top, r.abs);
    o.report.add_row({r.alpha, r.value.real(), r.value.imag(), r.abs, r.peak});
  }
  o.report.summary = {{"points", static_cast<int64_t>(rows.size())}, {"peaks", peaks}, {"max_abs", top}};
  return o;
}

Outcome run_resonance_fit(const Params& p) {
  const auto xs = p.list("xs");
  const double alpha = p.num("alpha");
  const double beta = p.num("beta");
  for (double x : xs) cusp::resonance::ResonanceParams{alpha, beta, x}.validate();
  const FormPair forms = resonance_forms(p, *std::max_element(xs.begin(), xs.end()));
  std::vector<double> abs_values;
  Outcome o;
  o.report.command = "resonance fit";
  o.report.columns = {"x", "abs"};
  for (double x : xs) {
    const cusp::resonance::ResonanceParams rp{alpha, beta, x};
    const auto s = forms.g ? cusp::resonance::resonance_sum_pair(forms.f, *forms.g, rp)
                           : cusp::resonance::resonance_sum_single(forms.f, rp);
    abs_values.push_back(std::abs(s));
    o.report.add_row({x, abs_values.back()});
  }
  const auto fit = cusp::resonance::exponent_fit(xs, abs_values);
  o.report.summary = {{"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"stderr_slope", fit.stderr_slope},
                      {"points", int64_t{fit.points}}};
  return o;
}

cusp::moments::MomentWindow moment_window(const Params& p) {
  cusp::moments::MomentWindow w;
  w.k1 = p.num("k1");
  w.l1 = p.num("l1");
  w.k2 = p.num("k2");
  w.l2 = p.num("l2");
  w.x = p.num("x");
  w.alpha = p.num("alpha");
  w.beta = p.num("beta");
  w.epsilon = p.num("epsilon", w.epsilon);
  w.dim_cap = p.integer("dim-cap", w.dim_cap);
  w.validate();
  return w;
}

Outcome run_moment(const Params& p) {
  const auto w = moment_window(p);
  Outcome o;
  o.json_default = true;
  if (p.has("regime")) {
    const auto regime = cusp::moments::parse_regime(p.text("regime", ""));
    const auto xs = p.has("xs") ? p.list("xs") : std::vector<double>{w.x};
    o.report.command = "moment bound";
    o.report.columns = {"x", "measured", "bound", "ratio"};
    double worst = 0.0;
    for (const auto& r : cusp::moments::theorem_bound_report(w, regime, xs)) {
      worst = std::max(worst, r.ratio);
      o.report.add_row({r.x, r.measured, r.bound, r.ratio});
    }
    o.report.summary = {{"regime", std::string(cusp::moments::regime_name(regime))},
                        {"max_ratio", worst}};
    return o;
  }
  const bool check = p.flag("identity-check");
  const double accuracy = p.num("accuracy", cusp::moments::kDefaultAccuracy);
  const long max_moduli = static_cast<long>(p.integer("max-moduli", cusp::moments::kMaxModuli));
  const auto b = cusp::moments::moment_geometric(w, accuracy, check, max_moduli);
  o.report.command = "moment";
  o.report.columns = {"term", "re", "im"};
  const std::pair<const char*, std::complex<double>> terms[] = {
      {"D00", b.d00}, {"D01", b.d01}, {"D10", b.d10}, {"D11", b.d11}, {"total", b.total()}};
  for (const auto& [name, z] : terms) o.report.add_row({std::string(name), z.real(), z.imag()});
  o.report.summary = {{"c_cutoff", int64_t{b.c_cutoff}}, {"seconds", b.seconds}};
  if (check) {
    const double tol = p.num("tolerance", 1e-6);
    const bool ok = b.relative_residual() <= tol;
    o.report.summary.insert(o.report.summary.begin(),
                            {{"spectral", b.spectral},
                             {"residual", b.residual},
                             {"relative_residual", b.relative_residual()},
                             {"identity_holds", ok}});
    if (!ok) {
      o.exit = kExitNumeric;
      o.failure = "relative residual " + cusp::format_double(b.relative_residual()) +
                  " exceeds " + cusp::format_double(tol);
    }
  }
  return o;
}

Outcome run_vw(const Params& p) {
  namespace osc = cusp::osc;
  const double k = p.num("k");
  const double l = p.num("l");
  const auto xs = p.list("x");
  osc::WOptions opt;
  opt.abs_tol = p.num("abs-tol", opt.abs_tol);
  Outcome o;
  o.report.command = "oscillatory vw";
  o.report.columns = {"x", "abs_v", "abs_v_from_w", "abs_main", "error", "main_error"};
  double worst = 0.0;
  for (double x : xs) {
    const auto v = osc::v_sum(k, l, x);
    const auto vw = osc::v_from_w(k, l, x, osc::VSign::kCorrected, opt);
    double main_abs = std::nan("");
    double main_err = std::nan("");
    if (x > std::abs(k - 1.0)) {
      // V = (i/2)(W(-x) - W(x)); the main term transfers the same way.
      const auto m = std::complex<double>(0.0, 0.5) *
                     (osc::w_main_term(k, l, -1, x) - osc::w_main_term(k, l, 1, x));
      main_abs = std::abs(m);
      main_err = std::abs(v - m);
    }
    worst = std::max(worst, std::abs(v - vw));
    o.report.add_row({x, std::abs(v), std::abs(vw), main_abs, std::abs(v - vw), main_err});
  }
  o.report.summary = {{"max_error", worst}};
  return o;
}

Outcome run_ddtest(const Params& p) {
  namespace osc = cusp::osc;
  const std::string preset = p.text("preset", "");
  osc::DerivativeProblem problem;
  if (preset == "quadratic") {
    problem = osc::quadratic_problem(p.num("n", 100.0));
  } else if (preset == "paperJ") {
    osc::PhaseContext ctx;
    ctx.c1 = p.integer("c1", ctx.c1);
    ctx.c2 = p.integer("c2", ctx.c2);
    ctx.d = p.integer("d", ctx.d);
    ctx.eta1 = p.integer("eta1", ctx.eta1);
    ctx.eta2 = p.integer("eta2", ctx.eta2);
    ctx.k1 = p.num("k1", ctx.k1);
    ctx.k2 = p.num("k2", ctx.k2);
    ctx.l1 = p.num("l1", ctx.l1);
    ctx.l2 = p.num("l2", ctx.l2);
    ctx.m = p.num("m", ctx.m);
    ctx.n = p.num("n", ctx.n);
    ctx.alpha = p.num("alpha", ctx.alpha);
    ctx.beta = p.num("beta", ctx.beta);
    ctx.x = p.num("x", ctx.x);
    problem = osc::j_integral_problem(ctx);
    problem.hypothesis_floor = p.num("floor", osc::kJHypothesisFloor);
  } else {
    throw ValidationError("--preset must be paperJ or quadratic");
  }
  osc::DerivativeTestOptions opt;
  opt.require_hypotheses = !p.flag("ignore-hypotheses");
  const auto r = osc::second_derivative_test(problem, opt);
  Outcome o;
  o.report.command = "oscillatory ddtest";
  o.report.columns = {"preset", "r1", "r2", "var_a", "bound", "measured", "ratio",
                      "kappa_uu", "kappa_vv", "kappa_det", "hypotheses_hold"};
  o.report.add_row({preset, r.r1, r.r2, r.var_a, r.bound, r.measured, r.ratio, r.kappa_uu,
                    r.kappa_vv, r.kappa_det, r.hypotheses_hold});
  o.report.summary = {{"ratio", r.ratio}, {"degenerate", r.degenerate}};
  return o;
}

struct Command {
  std::string name;  // config "command" value
  CLI::App* app = nullptr;
  Handler run;
};

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"cusp: level-one cusp form experiments"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  FlagSet flags;
  std::string config_path;
  std::string save_path;
  flags.value(&app, "out", "output file (default stdout)");
  flags.value(&app, "format", "csv or json");
  flags.value(&app, "threads", "worker threads (0 = hardware concurrency)");
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--save-config", save_path, "write the effective configuration here");

  std::vector<Command> commands;
  auto add = [&](CLI::App* parent, const std::string& sub, const std::string& full,
                 const std::string& help, Handler h, std::vector<std::string> values,
                 std::vector<std::string> switches = {}) {
    CLI::App* a = parent->add_subcommand(sub, help);
    for (const auto& v : values) flags.value(a, v, "");
    for (const auto& s : switches) flags.flag(a, s, "");
    commands.push_back({full, a, std::move(h)});
    return a;
  };

  add(&app, "coeffs", "coeffs", "Hecke eigenform coefficients", run_coeffs, {"weight", "n", "form"});
  add(&app, "kloosterman", "kloosterman", "Kloosterman sums S(m,n,c) for c <= c-max",
      run_kloosterman, {"m", "n", "c-max"});
  add(&app, "bessel", "bessel", "J_order(x) for a list of x", run_bessel, {"order", "x"},
      {"oracle"});

  // `petersson verify ...` and the bare `petersson ...` are the same command.
  CLI::App* pet = add(&app, "petersson", "petersson", "Petersson trace formula residuals",
                      run_petersson, {"weight", "max-mn"});
  pet->add_subcommand("verify", "tabulate both sides")->fallthrough();
  pet->fallthrough();

  CLI::App* res = app.add_subcommand("resonance", "resonance sums");
  res->require_subcommand(1);
  add(res, "scan", "resonance scan", "scan |S| over an alpha grid", run_resonance_scan,
      {"beta", "alpha-min", "alpha-max", "steps", "x", "weight1", "weight2", "form1", "form2",
       "peak-factor"});
  add(res, "fit", "resonance fit", "fit the exponent of |S| in X", run_resonance_fit,
      {"xs", "alpha", "beta", "weight1", "weight2", "form1", "form2"});

  add(&app, "moment", "moment", "double square moment and its D-term decomposition", run_moment,
      {"k1", "l1", "k2", "l2", "x", "alpha", "beta", "epsilon", "dim-cap", "accuracy",
       "max-moduli", "tolerance", "regime", "xs"},
      {"identity-check"});

  CLI::App* osc = app.add_subcommand("oscillatory", "oscillatory integrals and derivative tests");
  osc->require_subcommand(1);
  add(osc, "vw", "oscillatory vw", "V against its W representation and main term", run_vw,
      {"k", "l", "x", "abs-tol"});
  add(osc, "ddtest", "oscillatory ddtest", "second derivative test on a preset", run_ddtest,
      {"preset", "n", "c1", "c2", "d", "eta1", "eta2", "k1", "k2", "l1", "l2", "m", "alpha", "beta",
       "x", "floor"},
      {"ignore-hypotheses"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string command_name;
  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
    flags.overlay(cfg);

    const Command* selected = nullptr;
    for (const auto& c : commands) {
      if (c.app->parsed()) selected = &c;
    }
    if (selected) {
      cfg.set("command", selected->name);
    } else if (cfg.has("command")) {
      const std::string want = cfg.get("command", "");
      for (const auto& c : commands) {
        if (c.name == want) selected = &c;
      }
      if (!selected) throw ValidationError("unknown command '" + want + "' in config");
    } else {
      std::cerr << app.help();
      return kExitUsage;
    }
    command_name = selected->name;

    if (!save_path.empty()) cfg.save(save_path);
    const Params params(cfg);
    const int threads = params.integer("threads", 0);
    if (threads < 0) throw ValidationError("--threads must be >= 0");
    cusp::set_thread_count(static_cast<unsigned>(threads));

    Outcome outcome = selected->run(params);
    const auto format = cusp::cli::parse_format(
        params.text("format", outcome.json_default ? "json" : "csv"));
    const std::string out_path = params.text("out", "");
    if (out_path.empty()) {
      outcome.report.write(std::cout, format);
      std::cout.flush();
    } else {
      std::ofstream out(out_path);
      if (!out) throw ValidationError("cannot write '" + out_path + "'");
      outcome.report.write(out, format);
      if (!out) throw ValidationError("write to '" + out_path + "' failed");
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << "cusp " << command_name << ": rows=" << outcome.report.rows.size();
    const std::string summary = outcome.report.summary_line();
    if (!summary.empty()) line << " " << summary;
    line << " wall=" << cusp::format_double(wall) << "s";
    std::cerr << line.str() << "\n";
    if (outcome.exit != kExitOk) std::cerr << "cusp " << command_name << ": " << outcome.failure << "\n";
    return outcome.exit;
  } catch (const cusp::Error& e) {
    std::cerr << "cusp " << command_name << ": " << cusp::error_kind_name(e.kind())
              << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cusp " << command_name << ": " << e.what() << "\n";
    return kExitNumeric;
  }
}
