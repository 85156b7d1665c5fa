/*
   Copyright 2026 The kraw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end: eval, expand, verify, table.
// Exit codes: 0 success, 2 precondition violation, 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "kraw/expansion.hpp"
#include "kraw/orthopoly.hpp"
#include "kraw/verify.hpp"

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitVerifyFail = 3;

struct CommonOpts {
  std::string p_str = "1/2";
  long precision = kraw::PReal::kDefaultPrecision;
  std::string format = "json";
  std::string out_path;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--p", o.p_str, "success probability as an exact rational 'a/b'");
  cmd->add_option("--precision", o.precision, "working precision in bits (default 256)");
  cmd->add_option("--format", o.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
  cmd->add_flag("--timings", o.timings, "include wall-clock timings (breaks byte-identity)");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out_path);
    f << text;
  }
}

// x accepts either "a/b" (exact) or a decimal literal (converted, with a warning).
kraw::Rational parse_x(const std::string& s, long precision) {
  if (s.find('/') != std::string::npos) return kraw::rational_from_string(s);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) {
    return kraw::rational_from_string(s);
  }
  std::cerr << "warning: decimal input '" << s << "' converted to binary at " << precision
            << " bits\n";
  kraw::PReal v(precision);
  if (mpfr_set_str(v.raw(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a numeric literal: '" + s + "'");
  }
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, v.raw());
  kraw::Rational out(q);
  mpq_clear(q);
  return out;
}

nlohmann::ordered_json config_header(const CommonOpts& o, const std::string& command) {
  nlohmann::ordered_json cfg;
  cfg["command"] = command;
  cfg["p"] = o.p_str;
  cfg["precision_bits"] = o.precision;
  cfg["format"] = o.format;
  return cfg;
}

int run_eval(const CommonOpts& o, long N, long n, const std::string& xhat_str,
             const std::string& x_str, long M) {
  kraw::Rational p = kraw::rational_from_string(o.p_str);
  kraw::KrawtchoukParams params(p, N, n);

  kraw::Rational xhat;
  kraw::PReal x_real(o.precision);
  bool have_exact_xhat = false;
  if (!xhat_str.empty()) {
    xhat = kraw::rational_from_string(xhat_str);
    have_exact_xhat = true;
  } else if (!x_str.empty()) {
    kraw::Rational x_rat = parse_x(x_str, o.precision);
    kraw::ScaledPoint pt =
        kraw::ScaledPoint::from_x(N, p, kraw::PReal(x_rat, o.precision));
    x_real = pt.x;
    xhat = kraw::Rational(0);  // filled below from the real value only
  } else {
    throw std::invalid_argument("eval needs --xhat or --x");
  }

  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = config_header(o, "eval");
  j["config"]["N"] = N;
  j["config"]["n"] = n;
  j["config"]["M"] = M;
  j["config"]["xhat"] = xhat_str;
  j["config"]["x"] = x_str;

  nlohmann::ordered_json res;
  kraw::EdgeworthTable table(p, static_cast<unsigned>(M) + 3);
  if (have_exact_xhat) {
    kraw::Rational k = kraw::krawtchouk_hypergeometric(params, xhat);
    kraw::Rational K = kraw::krawtchouk_nonnormalized(params, xhat);
    res["k_n"] = kraw::to_string(k);
    res["K_n"] = kraw::to_string(K);
    kraw::ScaledPoint pt = kraw::ScaledPoint::from_xhat(N, p, xhat, o.precision);
    res["v"] = kraw::to_string(*pt.v);
    res["x"] = pt.x.str();
    res["H_n_at_x"] = kraw::hermite(static_cast<unsigned>(n)).eval(pt.x).str();
    if (kraw::is_integer(xhat) && xhat >= 0 && xhat <= N) {
      kraw::Rational rho = kraw::weight_rho(N, p, kraw::to_long(xhat.get_num()));
      res["rho"] = kraw::to_string(rho);
      kraw::PReal t2 =
          kraw::theorem2_eval(table, static_cast<unsigned>(n), static_cast<unsigned>(M), N, pt.x);
      res["theorem2"] = t2.str();
      kraw::PReal rho_k(rho * k, o.precision);
      res["theorem2_residual"] = abs(rho_k - t2).str();
    }
    if (n >= 1) {
      kraw::Rational c1 = kraw::corollary1_exact(static_cast<unsigned>(n), p, kraw::Rational(N),
                                                 *pt.v);
      res["corollary1"] = kraw::to_string(c1);
      res["corollary1_residual"] = kraw::to_string(abs(k - c1));
    }
  } else {
    kraw::PReal xhat_real = kraw::ScaledPoint::from_x(N, p, x_real).xhat_real();
    kraw::PReal k = kraw::krawtchouk_poly(params).eval(xhat_real);
    res["k_n"] = k.str();
    res["x"] = x_real.str();
    res["xhat"] = xhat_real.str();
    res["H_n_at_x"] = kraw::hermite(static_cast<unsigned>(n)).eval(x_real).str();
  }
  j["results"] = res;

  if (o.format == "csv") {
    std::ostringstream os;
    for (auto& [k, v] : j["config"].items()) {
      os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    os << "key,value\n";
    for (auto& [k, v] : j["results"].items()) {
      os << k << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    emit(o, os.str());
  } else {
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int run_expand(const CommonOpts& o, long n, long terms) {
  kraw::Rational p = kraw::rational_from_string(o.p_str);
  unsigned m_terms =
      terms > 0 ? static_cast<unsigned>(terms) : static_cast<unsigned>(n) / 2 + 1;
  kraw::ExpansionResult result =
      kraw::symbolic_expansion(static_cast<unsigned>(n), m_terms, p);

  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = config_header(o, "expand");
  j["config"]["n"] = n;
  j["config"]["terms"] = m_terms;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& term : result.terms) {
    nlohmann::ordered_json row;
    row["n_power"] = term.n_power;
    row["c"] = term.coeff.str();
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["exact"] = result.exact;
  j["residual_order"] =
      result.exact ? "none (expansion terminates)" : "o(N^" + kraw::to_string(result.residual_order) + ")";

  if (o.format == "csv") {
    std::ostringstream os;
    for (auto& [k, v] : j["config"].items()) {
      os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    os << "n_power,c\n";
    for (const auto& term : result.terms) {
      os << term.n_power << ",\"" << term.coeff.str() << "\"\n";
    }
    emit(o, os.str());
  } else {
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int run_verify(const CommonOpts& o, const std::string& claim_str, kraw::SweepConfig cfg,
               std::optional<double> target, bool decreasing, bool one_sided, bool pdouble) {
  kraw::Claim claim = kraw::claim_from_string(claim_str);
  cfg.p = kraw::rational_from_string(o.p_str);
  cfg.precision_bits = o.precision;
  if (target) cfg.target_slope = *target;
  cfg.require_decreasing = decreasing;
  cfg.one_sided = cfg.one_sided || one_sided;
  cfg.precision_doubling_check = pdouble;

  kraw::ConvergenceReport report = kraw::uniform_sweep(claim, cfg);
  std::string text = (o.format == "csv") ? kraw::report_to_csv(report, o.timings)
                                         : kraw::report_to_json(report, o.timings);
  emit(o, text);
  if (!report.pass) {
    std::cerr << "verification failed: claim=" << report.claim << " verdict=" << report.verdict
              << " slope=" << report.slope << "\n";
    return kExitVerifyFail;
  }
  return 0;
}

int run_table(const CommonOpts& o, long N, long n, long xhat_min, long xhat_max) {
  kraw::Rational p = kraw::rational_from_string(o.p_str);
  kraw::KrawtchoukParams params(p, N, n);
  if (xhat_max < 0) xhat_max = N;
  if (xhat_min < 0 || xhat_max > N || xhat_min > xhat_max) {
    throw std::invalid_argument("table: need 0 <= xhat-min <= xhat-max <= N");
  }
  std::ostringstream os;
  os << "# command=table\n# p=" << o.p_str << "\n# N=" << N << "\n# n=" << n
     << "\n# precision_bits=" << o.precision << "\n";
  os << "xhat,k_n,rho\n";
  for (long x = xhat_min; x <= xhat_max; ++x) {
    os << x << "," << kraw::to_string(kraw::krawtchouk_hypergeometric(params, kraw::Rational(x)))
       << "," << kraw::to_string(kraw::weight_rho(N, p, x)) << "\n";
  }
  emit(o, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Krawtchouk polynomials and their Hermite asymptotics"};
  app.require_subcommand(1);

  CommonOpts eval_opts, expand_opts, verify_opts, table_opts;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate k_n, K_n, rho and approximations");
  long eval_N = 4, eval_n = 0, eval_M = 2;
  std::string eval_xhat, eval_x;
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--N", eval_N, "lattice size N");
  eval_cmd->add_option("--n", eval_n, "polynomial degree n");
  eval_cmd->add_option("--M", eval_M, "expansion depth for the Theorem-2 comparison");
  eval_cmd->add_option("--xhat", eval_xhat, "evaluation point as an exact rational");
  eval_cmd->add_option("--x", eval_x, "scaled coordinate (decimal accepted, converted)");

  auto* expand_cmd = app.add_subcommand("expand", "print the c_j(v) rows of the N-expansion");
  long expand_n = 1, expand_terms = 0;
  add_common(expand_cmd, expand_opts);
  expand_cmd->add_option("--n", expand_n, "polynomial degree n");
  expand_cmd->add_option("--terms", expand_terms, "number of rows (default: until exact)");

  auto* verify_cmd = app.add_subcommand("verify", "run a residual-order sweep for one claim");
  std::string claim_str = "thm1";
  kraw::SweepConfig sweep;
  std::optional<double> target;
  double target_raw = 0;
  bool have_target = false, decreasing = false, one_sided = false, pdouble = false;
  std::string sweep_v = "1", sweep_x = "3/5";
  add_common(verify_cmd, verify_opts);
  verify_cmd->add_option("--claim", claim_str, "one of: thm1 thm1_diff thm2 cor1 cor2 "
                                               "sharapudinov lemma1 m_v_simplified orthogonality");
  verify_cmd->add_option("--n", sweep.n, "degree n");
  verify_cmd->add_option("--M", sweep.M, "expansion depth M");
  verify_cmd->add_option("--r", sweep.r, "derivative order r (thm1_diff)");
  verify_cmd->add_option("--i", sweep.i, "lattice shift i (cor2)");
  verify_cmd->add_option("--A", sweep.A, "half-width of the x window");
  verify_cmd->add_option("--v", sweep_v, "fixed v (rational)");
  verify_cmd->add_option("--x", sweep_x, "scaled coordinate x (rational)");
  verify_cmd->add_option("--ortho-N", sweep.ortho_N, "lattice size for orthogonality");
  verify_cmd->add_option("--grid-base", sweep.grid.base, "smallest N of the grid");
  verify_cmd->add_option("--grid-ratio", sweep.grid.ratio, "grid ratio (>= 2)");
  verify_cmd->add_option("--grid-count", sweep.grid.count, "number of N values (>= 5)");
  verify_cmd->add_option("--regime", sweep.grid.regime, "fixed-v | v=N^alpha");
  verify_cmd->add_option("--alpha", sweep.grid.alpha, "exponent for the v=N^alpha regime");
  verify_cmd->add_option("--samples-per-unit", sweep.grid.samples_per_unit,
                         "sup-norm sample density");
  verify_cmd->add_option("--target-slope", target_raw, "expected log-log slope")
      ->each([&](const std::string&) { have_target = true; });
  verify_cmd->add_option("--tolerance", sweep.tolerance, "slope tolerance (default 0.25)");
  verify_cmd->add_flag("--require-decreasing", decreasing, "fail unless residuals decrease");
  verify_cmd->add_flag("--one-sided", one_sided, "pass when slope <= target + tolerance");
  verify_cmd->add_flag("--precision-doubling", pdouble,
                       "re-run at doubled precision and compare slopes");

  auto* table_cmd = app.add_subcommand("table", "dump k_n over a lattice range as CSV");
  long table_N = 10, table_n = 2, table_lo = 0, table_hi = -1;
  add_common(table_cmd, table_opts);
  table_cmd->add_option("--N", table_N, "lattice size N");
  table_cmd->add_option("--n", table_n, "polynomial degree n");
  table_cmd->add_option("--xhat-min", table_lo, "first lattice point");
  table_cmd->add_option("--xhat-max", table_hi, "last lattice point (default N)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return run_eval(eval_opts, eval_N, eval_n, eval_xhat, eval_x, eval_M);
    if (expand_cmd->parsed()) return run_expand(expand_opts, expand_n, expand_terms);
    if (verify_cmd->parsed()) {
      sweep.v = kraw::rational_from_string(sweep_v);
      sweep.x = kraw::rational_from_string(sweep_x);
      if (have_target) target = target_raw;
      return run_verify(verify_opts, claim_str, sweep, target, decreasing, one_sided, pdouble);
    }
    if (table_cmd->parsed()) return run_table(table_opts, table_N, table_n, table_lo, table_hi);
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
