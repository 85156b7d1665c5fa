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

#include <cmath>

#include "doctest.h"
#include "kraw/expansion.hpp"
#include "kraw/orthopoly.hpp"
#include "kraw/verify.hpp"

using namespace kraw;

namespace {
constexpr long kPrec = 256;
}

TEST_CASE("exact bivariate route: low degrees by hand") {
  // k_1(Np+v) = v
  ExpansionResult k1 = krawtchouk_series_exact(1, Rational(3, 10));
  REQUIRE(k1.terms.size() == 1);
  CHECK(k1.terms[0].n_power == 0);
  CHECK(k1.terms[0].coeff == VPoly::monomial(Rational(1), 1, "v"));
  CHECK(k1.exact);

  // k_2(Np+v) = -pqN/2 + v^2/2 + (p - 1/2)v
  Rational p(3, 10), q(7, 10);
  ExpansionResult k2 = krawtchouk_series_exact(2, p);
  REQUIRE(k2.terms.size() == 2);
  CHECK(k2.terms[0].n_power == 1);
  CHECK(k2.terms[0].coeff == VPoly::constant(-p * q / 2, "v"));
  CHECK(k2.terms[1].n_power == 0);
  CHECK(k2.terms[1].coeff == VPoly({Rational(0), p - Rational(1, 2), Rational(1, 2)}, "v"));
}

TEST_CASE("exact bivariate route evaluates to the hypergeometric values") {
  for (unsigned n = 0; n <= 7; ++n) {
    for (const Rational& p : {Rational(1, 2), Rational(3, 10)}) {
      ExpansionResult exp_n = krawtchouk_series_exact(n, p);
      for (long N : {24L, 60L}) {
        for (long vi = -3; vi <= 3; ++vi) {
          Rational v(vi);
          Rational want = krawtchouk_hypergeometric(KrawtchoukParams(p, N, n),
                                                    Rational(N) * p + v);
          CHECK(exp_n.eval(Rational(N), v) == want);
        }
      }
    }
  }
}

TEST_CASE("symbolic engine reproduces the exact expansion (the headline check)") {
  // The density-quotient route must agree with the direct bivariate
  // expansion coefficient for coefficient, for every degree up to 7,
  // and keep only integer powers of N with all w-odd parts cancelled
  // (the engine throws if the parity assertions fail).
  for (unsigned n = 0; n <= 7; ++n) {
    for (const Rational& p : {Rational(1, 2), Rational(3, 10), Rational(1, 3)}) {
      unsigned m_terms = n / 2 + 1;
      ExpansionResult engine = symbolic_expansion(n, m_terms, p);
      ExpansionResult oracle = krawtchouk_series_exact(n, p);
      REQUIRE(engine.terms.size() == oracle.terms.size());
      for (size_t t = 0; t < engine.terms.size(); ++t) {
        CHECK(engine.terms[t].n_power == oracle.terms[t].n_power);
        CHECK(engine.terms[t].coeff == oracle.terms[t].coeff);
      }
      CHECK(engine.exact);
    }
  }
}

TEST_CASE("symbolic engine: n=1 collapses to v") {
  ExpansionResult r = symbolic_expansion(1, 1, Rational(2, 7));
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].coeff == VPoly::monomial(Rational(1), 1, "v"));
}

TEST_CASE("corollary 1 displayed polynomials match the engine") {
  // even n = 2l for l <= 3, odd n = 2l+1 for l <= 2
  for (const Rational& p : {Rational(1, 2), Rational(3, 10)}) {
    for (unsigned n : {2u, 4u, 6u}) {
      ExpansionResult engine = symbolic_expansion(n, 2, p);
      auto rows = corollary1_terms(n, p);
      REQUIRE(rows.size() == 2);
      CHECK(rows[0].coeff == *engine.coeff_at(rows[0].n_power));
      CHECK(rows[1].coeff == *engine.coeff_at(rows[1].n_power));
    }
    for (unsigned n : {1u, 3u, 5u}) {
      ExpansionResult engine = symbolic_expansion(n, 1, p);
      auto rows = corollary1_terms(n, p);
      REQUIRE(rows.size() == 1);
      CHECK(rows[0].coeff == *engine.coeff_at(rows[0].n_power));
    }
  }
}

TEST_CASE("corollary 1: n=1 gives v, n=2 is exact") {
  for (const Rational& p : {Rational(1, 2), Rational(3, 10)}) {
    for (long vi = -2; vi <= 2; ++vi) {
      CHECK(corollary1_exact(1, p, Rational(100), Rational(vi)) == Rational(vi));
    }
    // the l = 1 even display is exactly k_2
    for (long N : {10L, 37L, 200L}) {
      for (long vi = -2; vi <= 2; ++vi) {
        Rational v(vi);
        Rational want = krawtchouk_hypergeometric(KrawtchoukParams(p, N, 2), Rational(N) * p + v);
        CHECK(corollary1_exact(2, p, Rational(N), v) == want);
      }
    }
  }
  CHECK_THROWS_AS(corollary1_terms(0, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("corollary 1 residual orders") {
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;
  SweepConfig cfg;
  cfg.p = Rational(3, 10);
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  cfg.v = Rational(1);

  cfg.n = 4;
  ConvergenceReport even = uniform_sweep(Claim::cor1, cfg);
  CHECK(even.slope == doctest::Approx(-1.0).epsilon(0.25));

  cfg.n = 3;
  ConvergenceReport odd = uniform_sweep(Claim::cor1, cfg);
  CHECK(odd.slope == doctest::Approx(-1.0).epsilon(0.25));
}

TEST_CASE("corollary 2 exact relation identity") {
  // K_n(x, p, N1) = k_n(N1 p + v1, N1) / ((-p)^n C(N1, n)) with v1 = v + ip:
  // both sides exactly, for a few (n, i).
  Rational p(2, 5);
  for (unsigned n : {1u, 2u, 3u}) {
    for (long i : {0L, 1L, 2L}) {
      long N = 50;
      long N1 = N - i;
      Rational v(3);
      Rational x = Rational(N) * p + v;
      Rational lhs = krawtchouk_nonnormalized(KrawtchoukParams(p, N1, n), x);
      Rational v1 = x - Rational(N1) * p;
      CHECK(v1 == v + Rational(i) * p);
      Rational scale = pow_rational(-p, n) * Rational(binomial(N1, n));
      Rational rhs = krawtchouk_hypergeometric(KrawtchoukParams(p, N1, n), x) / scale;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("corollary 2 displayed rows equal the k_n-route re-expansion") {
  for (const Rational& p : {Rational(1, 2), Rational(3, 10)}) {
    for (long i : {0L, 1L, 2L}) {
      for (unsigned n : {2u, 4u}) {
        auto displayed = corollary2_terms(n, p, i);
        auto relation = corollary2_via_relation(n, p, i, 2);
        REQUIRE(displayed.size() == 2);
        REQUIRE(relation.size() == 2);
        CHECK(displayed[0].n_power == relation[0].n_power);
        CHECK(displayed[0].coeff == relation[0].coeff);
        CHECK(displayed[1].coeff == relation[1].coeff);
      }
      for (unsigned n : {1u, 3u, 5u}) {
        auto displayed = corollary2_terms(n, p, i);
        const unsigned l = n / 2;
        auto relation = corollary2_via_relation(n, p, i, 2);
        // K_{2l+1} really starts at N^(-l-1): the N^(-l) row vanishes and the
        // display's single row is the next one.
        REQUIRE(displayed.size() == 1);
        CHECK(displayed[0].n_power == -static_cast<long>(l) - 1);
        CHECK(relation[0].coeff.is_zero());
        CHECK(displayed[0].coeff == relation[1].coeff);
        // the printed (uncorrected) sign would be the negation
        CHECK(displayed[0].coeff != -relation[1].coeff);
      }
    }
  }
}

TEST_CASE("corollary 2 residual order") {
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;
  SweepConfig cfg;
  cfg.p = Rational(1, 2);
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  cfg.n = 2;
  cfg.i = 1;
  cfg.v = Rational(1);
  ConvergenceReport rep = uniform_sweep(Claim::cor2, cfg);
  CHECK(rep.slope == doctest::Approx(-1.0).epsilon(0.25));
  CHECK(rep.pass);
}

TEST_CASE("theorem 2: n=0 reduces to the Petrov density") {
  Rational p(3, 10);
  EdgeworthTable table(p, 5);
  PReal x(Rational(3, 5), kPrec);
  for (unsigned M : {0u, 1u, 2u}) {
    PReal lhs = theorem2_eval(table, 0, M, 1 << 12, x);
    PReal rhs = petrov_density(table, M, 1 << 12, x) / sqrt(PReal(1 << 12, kPrec));
    CHECK(abs(lhs - rhs) < PReal(1e-70, kPrec));
  }
}

TEST_CASE("theorem 2: printed psi superscript collapses at n=0, M=0") {
  // With the literal superscript M the whole approximant is zero (psi_0^0 has
  // only empty inner sums), so it cannot reach the claimed residual order;
  // the M+1 form reproduces rho to O(1/N).
  Rational p(3, 10);
  EdgeworthTable table(p, 5);
  PReal x(Rational(3, 5), kPrec);
  CHECK(theorem2_eval_printed(table, 0, 0, 1 << 12, x).is_zero());
  CHECK(!theorem2_eval(table, 0, 0, 1 << 12, x).is_zero());
}

TEST_CASE("theorem 2 residual order at (n,M) = (3,2)") {
  GridSpec grid;
  grid.base = 1L << 12;
  grid.count = 6;
  SweepConfig cfg;
  cfg.p = Rational(3, 10);
  cfg.n = 3;
  cfg.M = 2;
  cfg.x = Rational(3, 5);
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  ConvergenceReport rep = uniform_sweep(Claim::thm2, cfg);
  // claimed O(N^{(n-M-2)/2}) = O(N^{-1/2})
  CHECK(rep.pass);
  CHECK(rep.slope <= -0.25);
  CHECK(rep.slope >= -1.1);
}

TEST_CASE("theorem 2 is stable for M >= n") {
  // k-terms beyond n vanish through n^(k falling) = 0.
  Rational p(2, 5);
  EdgeworthTable table(p, 8);
  PReal x(Rational(1, 2), kPrec);
  PReal a = theorem2_eval(table, 2, 5, 1 << 10, x);
  CHECK(!a.is_zero());  // well-defined, no blow-up
}

TEST_CASE("classical limit through theorem 2's M=0 shape") {
  // (2/(Npq))^{n/2} n! k_n(xhat) -> H_n(x) with slope -1/2 at p != 1/2.
  Rational p(3, 10), q(7, 10);
  unsigned n = 3;
  PReal x(Rational(7, 10), kPrec);
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;
  ConvergenceReport rep = estimate_order(
      [&](long N) {
        PReal xhat = PReal(Rational(N) * p, kPrec) +
                     sqrt_rational(Rational(2 * N) * p * q, kPrec) * x;
        PReal kn = krawtchouk_poly(KrawtchoukParams(p, N, n)).eval(xhat);
        PReal scale = pow_si(sqrt(PReal(Rational(2) / (Rational(N) * p * q), kPrec)),
                             static_cast<long>(n)) *
                      PReal(Rational(factorial(n)), kPrec);
        return scale * kn - hermite(n).eval(x);
      },
      grid);
  CHECK(rep.slope == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("sharapudinov normalization") {
  Rational p(1, 2);
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;

  SweepConfig cfg;
  cfg.p = p;
  cfg.n = 0;
  cfg.x = Rational(0);
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  ConvergenceReport rep = uniform_sweep(Claim::sharapudinov, cfg);
  CHECK(rep.slope == doctest::Approx(-0.5).epsilon(0.3));

  // n = 2: difference * sqrt(N) stays bounded.
  std::vector<double> scaled;
  for (long N : {1L << 10, 1L << 14, 1L << 18}) {
    auto [lhs, rhs] = sharapudinov_eval(2, N, p, PReal(0L, kPrec));
    scaled.push_back((abs(lhs - rhs) * sqrt(PReal(N, kPrec))).to_double());
  }
  for (double s : scaled) CHECK(s < 2.0 * scaled[0] + 1.0);

  // odd n at x = 0, p = 1/2: both sides vanish identically.
  auto [lhs, rhs] = sharapudinov_eval(3, 1 << 12, p, PReal(0L, kPrec));
  CHECK(abs(lhs - rhs) < PReal(1e-60, kPrec));
}

TEST_CASE("derivative closed forms") {
  // l = 0, v = 0, p = 1/2: the printed bracket evaluates to 1 + tau2/(36 pq N)
  // with tau2 = 3(1 - pq), i.e. 1 + 1/(4N) at p = 1/2.
  long N = 1 << 10;
  DerivativeClosedForms forms = derivative_closed_forms(0, Rational(1, 2), N, Rational(0), kPrec);
  CHECK(forms.tau2 == Rational(3) * (Rational(1) - Rational(1, 4)));
  PReal expect = PReal(1, kPrec) + PReal(Rational(1, 4 * N), kPrec);
  CHECK(abs(forms.bracket_2l_printed - expect) < PReal(1e-70, kPrec));

  // The corrected bracket (minus sign) at l = 0 is the simplified psi*rho
  // display; the printed plus variant is not.
  Rational p(1, 3);
  Rational v(1);
  DerivativeClosedForms f2 = derivative_closed_forms(0, p, N, v, kPrec);
  CHECK(abs(f2.bracket_2l_corrected - PReal(m_v_simplified(p, N, v), kPrec)) <
        PReal(1e-70, kPrec));
  CHECK(abs(f2.bracket_2l_printed - PReal(m_v_simplified(p, N, v), kPrec)) >
        PReal(1e-6, kPrec));
}

TEST_CASE("corrected bracket matches the derivative expansion; printed does not") {
  // psi(x) d^{2l}/dx^{2l} rho(xhat(x)) = sum_nu g~_{nu,2l}(x) N^{-nu/2}:
  // against the M = 2 series, the corrected closed form leaves o(1/N),
  // the printed form leaves a residual at the 1/N order itself.
  Rational p(3, 10), q(7, 10);
  unsigned l = 1;
  EdgeworthTable table(p, 2);
  Rational v(1);
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;
  auto series_route = [&](long N) {
    PReal x = PReal(v, kPrec) / sqrt_rational(Rational(2 * N) * p * q, kPrec);
    PReal sigma = sqrt_rational(p * q, kPrec);
    // strip the Gaussian prefactor from petrov_density_derivative
    PReal pref = exp(-(x * x)) / (sqrt(PReal(2, kPrec) * pi(kPrec)) * sigma);
    return petrov_density_derivative(table, 2, N, 2 * l, x) / pref;
  };
  ConvergenceReport corrected = estimate_order(
      [&](long N) {
        return (series_route(N) -
                derivative_closed_forms(l, p, N, v, kPrec).bracket_2l_corrected) *
               PReal(N, kPrec);
      },
      grid);
  ConvergenceReport printed = estimate_order(
      [&](long N) {
        return (series_route(N) - derivative_closed_forms(l, p, N, v, kPrec).bracket_2l_printed) *
               PReal(N, kPrec);
      },
      grid);
  CHECK(corrected.slope < -0.3);   // residual*N -> 0
  CHECK(printed.slope > -0.05);    // residual*N stays at a constant

  // And the sqrt(2/(Npq)) display belongs to the odd order 2l+1 as printed.
  ConvergenceReport odd_display = estimate_order(
      [&](long N) {
        PReal x = PReal(v, kPrec) / sqrt_rational(Rational(2 * N) * p * q, kPrec);
        PReal sigma = sqrt_rational(p * q, kPrec);
        PReal pref = exp(-(x * x)) / (sqrt(PReal(2, kPrec) * pi(kPrec)) * sigma);
        PReal route = petrov_density_derivative(table, 2, N, 2 * l + 1, x) / pref;
        return (route - derivative_closed_forms(l, p, N, v, kPrec).deriv_2l_plus_1) *
               PReal(N, kPrec);
      },
      grid);
  CHECK(odd_display.slope < -0.3);
}

TEST_CASE("m_v_simplified residual vanishes faster than 1/N") {
  GridSpec grid;
  grid.base = 3 * (1L << 10);
  grid.count = 6;
  SweepConfig cfg;
  cfg.p = Rational(1, 3);
  cfg.v = Rational(1);
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  ConvergenceReport rep = uniform_sweep(Claim::m_v_simplified, cfg);
  CHECK(rep.pass);
  CHECK(rep.slope < -0.5);
}

TEST_CASE("regime boundary: v = N^0.45 degrades the odd-case rate by about "
          "three alpha powers but stays under the sqrt(N)-inflated claim") {
  // n = 3: residual is c_2(v), cubic in v. At v = N^0.45 the raw residual
  // grows like N^1.35, which exceeds the fixed-v claim o(N^1) by less than
  // the sqrt(N) inflation the closing remark licenses.
  Rational p(3, 10);
  GridSpec grid;
  grid.base = 1L << 10;
  grid.count = 6;
  grid.regime = "v=N^alpha";
  grid.alpha = 0.45;
  SweepConfig cfg;
  cfg.p = p;
  cfg.n = 3;
  cfg.grid = grid;
  cfg.precision_bits = kPrec;
  cfg.target_slope = 0.0;  // fit the raw residual; normalization off
  ConvergenceReport rep = uniform_sweep(Claim::cor1, cfg);
  // raw slope = weighted slope + l (the sweep divides by N^l)
  double raw_slope = rep.slope + 1.0;
  CHECK(raw_slope <= 1.0 + 0.7);       // within the sqrt(N)-degraded claim
  CHECK(raw_slope == doctest::Approx(1.35).epsilon(0.15));
}
