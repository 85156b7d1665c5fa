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

#include "kraw/expansion.hpp"

#include <algorithm>
#include <stdexcept>

#include "kraw/combinatorics.hpp"
#include "kraw/diffcalc.hpp"
#include "kraw/orthopoly.hpp"
#include "kraw/stirling.hpp"

namespace kraw {

Rational ExpansionResult::eval(const Rational& N, const Rational& v) const {
  Rational acc(0);
  for (const auto& term : terms) acc += term.coeff.eval(v) * pow_rational(N, term.n_power);
  return acc;
}

const VPoly* ExpansionResult::coeff_at(long n_power) const {
  for (const auto& term : terms) {
    if (term.n_power == n_power) return &term.coeff;
  }
  return nullptr;
}

namespace {

// x = v*eps/w substitution: every x^j monomial of g (coefficients in Q + Qw)
// contributes (a_j + b_j w) w^(w_shift - j) v^j eps^(j + eps_shift).
void accumulate_substituted(AsymptoticSeries& out, const RadicalPoly& g, int eps_shift,
                            long w_shift, const Rational& two_pq, const Rational& scale) {
  int deg = std::max(g.a().degree(), g.b().degree());
  for (int j = 0; j <= deg; ++j) {
    Rational aj = g.a().coeff(static_cast<unsigned>(j)) * scale;
    Rational bj = g.b().coeff(static_cast<unsigned>(j)) * scale;
    if (aj == 0 && bj == 0) continue;
    RadicalPoly sc(VPoly::constant(aj, "v"), VPoly::constant(bj, "v"), two_pq);
    sc.mul_w_power(w_shift - j);
    RadicalPoly term(VPoly::monomial(sc.a().coeff(0), static_cast<unsigned>(j), "v"),
                     VPoly::monomial(sc.b().coeff(0), static_cast<unsigned>(j), "v"), two_pq);
    out.add_term(j + eps_shift, term);
  }
}

// psi_s as a formal series in eps at x = v*eps/w; terms (i, nu) are kept
// inclusively for i + nu <= s + T + 2 so nothing below the truncation T is
// missing. Truncation of the returned series: T + 2s + 1.
AsymptoticSeries psi_series(const EdgeworthTable& table, unsigned s, int T) {
  const Rational& two_pq = table.two_pq();
  long budget = static_cast<long>(s) + T + 2;
  AsymptoticSeries out(T + 2 * static_cast<int>(s) + 1, two_pq);
  if (budget < 0) return out;
  for (long i = 0; i <= budget; ++i) {
    Rational asi = a_coefficient(s, static_cast<unsigned>(i));
    if (asi == 0) continue;
    for (long nu = 0; i + nu <= budget; ++nu) {
      RadicalPoly g = table.g_tilde(static_cast<unsigned>(nu), s + static_cast<unsigned>(i));
      // g~_{nu,s+i}(x) N^(-nu/2) h^(s+i): eps^(nu+s+i) w^(-(s+i))
      accumulate_substituted(out, g, static_cast<int>(nu + s + i), -(static_cast<long>(s) + i),
                             two_pq, asi);
    }
  }
  return out;
}

// (xhat + c)^(m falling) with xhat = p eps^(-2) + v, as an exact series.
AsymptoticSeries falling_factorial_series(const Rational& p, long c, unsigned m,
                                          const Rational& two_pq) {
  AsymptoticSeries out(AsymptoticSeries::kExactOrder, two_pq);
  out.add_term(0, RadicalPoly::rational_part(Rational(1), two_pq));
  for (unsigned t = 0; t < m; ++t) {
    AsymptoticSeries factor(AsymptoticSeries::kExactOrder, two_pq);
    factor.add_term(-2, RadicalPoly::rational_part(p, two_pq));
    factor.add_term(0, RadicalPoly(VPoly({Rational(c - static_cast<long>(t)), Rational(1)}, "v"),
                                   VPoly("v"), two_pq));
    out = out * factor;
  }
  return out;
}

ExpansionResult extract_terms(const AsymptoticSeries& series, unsigned n, unsigned m_terms,
                              const Rational& p, bool require_parity) {
  const long lead_power = static_cast<long>(n / 2);
  ExpansionResult result;
  result.n = static_cast<long>(n);
  result.p = p;

  if (require_parity) {
    for (const auto& [e, c] : series.terms()) {
      if (e % 2 != 0 && !c.is_zero()) {
        throw std::logic_error("expansion kept a half-integer power of N at eps^" +
                               std::to_string(e));
      }
      if (!c.is_rational()) {
        throw std::logic_error("expansion kept a w-odd coefficient at eps^" + std::to_string(e));
      }
    }
  }

  for (unsigned j = 0; j < m_terms; ++j) {
    int e = static_cast<int>(-2 * lead_power + 2 * static_cast<long>(j));
    if (e >= series.truncation_order()) {
      throw std::invalid_argument("truncation order too small for the requested terms");
    }
    RadicalPoly c = series.coeff(e);
    result.terms.push_back(ExpansionTerm{lead_power - static_cast<long>(j), c.a().renamed("v")});
  }
  result.residual_order = Rational(lead_power - static_cast<long>(m_terms));
  result.exact = (m_terms >= n / 2 + 1);
  result.regime = "v fixed, N -> infinity";
  return result;
}

}  // namespace

ExpansionResult symbolic_expansion(unsigned n, unsigned m_terms, const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("symbolic_expansion: p outside (0,1)");
  if (m_terms == 0) throw std::invalid_argument("symbolic_expansion: need at least one term");
  const Rational q = Rational(1) - p;
  const Rational two_pq = Rational(2) * p * q;

  // Keep eps exponents through e0 + 2(m_terms-1); everything is exact, so the
  // inner depths just have to be inclusive.
  const int e0 = -2 * static_cast<int>(n / 2);
  const int T = e0 + 2 * (static_cast<int>(m_terms) - 1) + 1;
  const int V = static_cast<int>(n) + T;  // Petrov series depth for the divisor

  const unsigned table_depth =
      static_cast<unsigned>(std::max<long>(static_cast<long>(n) + std::max(T, 0) + 2,
                                           std::max<long>(V, 2)));
  EdgeworthTable table(p, table_depth);

  // Numerator: ((-q)^n / n!) sum_k C(n,k) n^(k) (xhat+n-k)^(n-k) psi_{n-k}.
  AsymptoticSeries num(T + 1, two_pq);
  for (unsigned k = 0; k <= n; ++k) {
    const unsigned s = n - k;
    Rational scalar = Rational(binomial(n, static_cast<long>(k))) *
                      Rational(falling_factorial(static_cast<long>(n), k));
    AsymptoticSeries ff =
        falling_factorial_series(p, static_cast<long>(s), s, two_pq);
    AsymptoticSeries term = ff * psi_series(table, s, T);
    term *= scalar;
    num += term;
  }
  num *= pow_rational(-q, static_cast<long>(n)) / Rational(factorial(n));

  // Divisor: the Petrov series sum_nu q~_nu(v eps / w) eps^nu.
  AsymptoticSeries den(V + 1, two_pq);
  for (int nu = 0; nu <= V; ++nu) {
    accumulate_substituted(den, table.q_tilde(static_cast<unsigned>(nu)), nu, 0, two_pq,
                           Rational(1));
  }

  AsymptoticSeries quotient = divide_to(num, den, T);
  return extract_terms(quotient, n, m_terms, p, /*require_parity=*/true);
}

ExpansionResult krawtchouk_series_exact(unsigned n, const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("krawtchouk_series_exact: p outside (0,1)");
  const Rational two_pq = Rational(2) * p * (Rational(1) - p);
  AsymptoticSeries sum(AsymptoticSeries::kExactOrder, two_pq);
  for (unsigned j = 0; j <= n; ++j) {
    // (-p)^n (-1)^j n^(j) / (j! p^j n!) * (N-j)^(n-j) * (Np+v)^(j)
    Rational scalar = pow_rational(-p, static_cast<long>(n)) *
                      Rational(falling_factorial(static_cast<long>(n), j)) /
                      (Rational(factorial(j)) * pow_rational(p, static_cast<long>(j)) *
                       Rational(factorial(n)));
    if (j % 2 != 0) scalar = -scalar;

    AsymptoticSeries a(AsymptoticSeries::kExactOrder, two_pq);
    a.add_term(0, RadicalPoly::rational_part(Rational(1), two_pq));
    for (unsigned t = 0; t + j < n; ++t) {
      AsymptoticSeries factor(AsymptoticSeries::kExactOrder, two_pq);
      factor.add_term(-2, RadicalPoly::rational_part(Rational(1), two_pq));
      factor.add_term(0, RadicalPoly::rational_part(-Rational(static_cast<long>(j + t)), two_pq));
      a = a * factor;
    }
    AsymptoticSeries b(AsymptoticSeries::kExactOrder, two_pq);
    b.add_term(0, RadicalPoly::rational_part(Rational(1), two_pq));
    for (unsigned t = 0; t < j; ++t) {
      AsymptoticSeries factor(AsymptoticSeries::kExactOrder, two_pq);
      factor.add_term(-2, RadicalPoly::rational_part(p, two_pq));
      factor.add_term(0, RadicalPoly(VPoly({-Rational(static_cast<long>(t)), Rational(1)}, "v"),
                                     VPoly("v"), two_pq));
      b = b * factor;
    }
    AsymptoticSeries term = a * b;
    term *= scalar;
    sum += term;
  }

  ExpansionResult result = extract_terms(sum, n, n / 2 + 1, p, /*require_parity=*/true);
  result.exact = true;
  return result;
}

CorollaryCoeffs corollary_coeffs(unsigned l, const Rational& p, long i) {
  CorollaryCoeffs c;
  c.l = l;
  Rational pq = p * (Rational(1) - p);
  Rational ll(static_cast<long>(l));
  c.t1 = Rational(6) * (p - Rational(1, 2)) * (Rational(4) * ll - 1);
  c.t2 = (ll - 1) * (Rational(1) + 4 * ll - (Rational(16) * ll - 5) * pq);
  c.t2_printed = (ll - 1) * (Rational(1) + 4 * ll + (Rational(16) * ll - 5) * pq);
  c.t1_mod = c.t1;
  c.t2_mod = c.t2 - Rational(9) * pq * Rational(i + 2 * static_cast<long>(l) - 1);
  return c;
}

std::vector<ExpansionTerm> corollary1_terms(unsigned n, const Rational& p) {
  if (n == 0) throw std::invalid_argument("corollary1: n >= 1");
  const Rational pq = p * (Rational(1) - p);
  const unsigned l = n / 2;
  Rational lead = Rational(double_factorial(2 * static_cast<long>(l) - 1)) *
                  pow_rational(pq, static_cast<long>(l)) /
                  Rational(factorial(2 * l));
  if (l % 2 != 0) lead = -lead;

  std::vector<ExpansionTerm> rows;
  if (n % 2 == 0) {
    CorollaryCoeffs tc = corollary_coeffs(l, p, 0);
    rows.push_back({static_cast<long>(l), VPoly::constant(lead, "v")});
    // -lead * l (9v^2 + t1 v + t2) / (9pq)
    VPoly quad({tc.t2, tc.t1, Rational(9)}, "v");
    Rational scale = -lead * Rational(static_cast<long>(l)) / (Rational(9) * pq);
    rows.push_back({static_cast<long>(l) - 1, quad * scale});
  } else {
    // lead * (4l(p-1/2) + 3v)/3
    VPoly lin({Rational(4 * static_cast<long>(l)) * (p - Rational(1, 2)), Rational(3)}, "v");
    rows.push_back({static_cast<long>(l), lin * (lead / Rational(3))});
  }
  return rows;
}

Rational corollary1_exact(unsigned n, const Rational& p, const Rational& N, const Rational& v) {
  Rational acc(0);
  for (const auto& row : corollary1_terms(n, p)) {
    acc += row.coeff.eval(v) * pow_rational(N, row.n_power);
  }
  return acc;
}

PReal corollary1_eval(unsigned n, const Rational& p, long N, const Rational& v, long prec) {
  return PReal(corollary1_exact(n, p, Rational(N), v), prec);
}

std::vector<ExpansionTerm> corollary2_terms(unsigned n, const Rational& p, long i) {
  if (n == 0) throw std::invalid_argument("corollary2: n >= 1");
  const Rational q = Rational(1) - p;
  const Rational pq = p * q;
  const unsigned l = n / 2;
  Rational head = Rational(double_factorial(2 * static_cast<long>(l) - 1)) *
                  pow_rational(q / p, static_cast<long>(l));
  if (l % 2 != 0) head = -head;  // (-q/p)^l

  std::vector<ExpansionTerm> rows;
  const Rational shift = Rational(i) * p;  // v -> v + ip
  if (n % 2 == 0) {
    CorollaryCoeffs tc = corollary_coeffs(l, p, i);
    rows.push_back({-static_cast<long>(l), VPoly::constant(head, "v")});
    VPoly quad({tc.t2_mod, tc.t1_mod, Rational(9)}, "v");
    quad = quad.compose_linear(Rational(1), shift);
    Rational scale = -head * Rational(static_cast<long>(l)) / (Rational(9) * pq);
    rows.push_back({-static_cast<long>(l) - 1, quad * scale});
  } else {
    // Sign-corrected odd display: the printed K_n <-> k_n relation is
    // inverted, which loses the factor (-1)^n for odd n.
    VPoly lin({Rational(4 * static_cast<long>(l)) * (p - Rational(1, 2)), Rational(3)}, "v");
    lin = lin.compose_linear(Rational(1), shift);
    Rational scale = -head * Rational(2 * static_cast<long>(l) + 1) / (Rational(3) * p);
    rows.push_back({-static_cast<long>(l) - 1, lin * scale});
  }
  return rows;
}

Rational corollary2_exact(unsigned n, const Rational& p, const Rational& N, long i,
                          const Rational& v) {
  Rational acc(0);
  for (const auto& row : corollary2_terms(n, p, i)) {
    acc += row.coeff.eval(v) * pow_rational(N, row.n_power);
  }
  return acc;
}

PReal corollary2_eval(unsigned n, const Rational& p, long N, long i, const Rational& v,
                      long prec) {
  if (N - i < static_cast<long>(n)) throw std::invalid_argument("corollary2: N - i < n");
  return PReal(corollary2_exact(n, p, Rational(N), i, v), prec);
}

std::vector<ExpansionTerm> corollary2_via_relation(unsigned n, const Rational& p, long i,
                                                   unsigned m_terms) {
  const Rational two_pq = Rational(2) * p * (Rational(1) - p);
  const unsigned l = n / 2;
  const int trunc = 2 * static_cast<int>(l) + 2 * static_cast<int>(m_terms) - 1;

  // k_n(N1 p + v1, N1) with N1 = N - i = eps^(-2) - i and v1 = v + ip.
  ExpansionResult kexp = krawtchouk_series_exact(n, p);
  AsymptoticSeries knum(AsymptoticSeries::kExactOrder, two_pq);
  for (const auto& row : kexp.terms) {
    VPoly shifted = row.coeff.compose_linear(Rational(1), Rational(i) * p);
    // N1^m = (eps^(-2) - i)^m, m >= 0
    long m = row.n_power;
    for (long t = 0; t <= m; ++t) {
      Rational c = Rational(binomial(static_cast<unsigned long>(m), t)) *
                   pow_rational(Rational(-i), t);
      RadicalPoly coeff(shifted * c, VPoly("v"), two_pq);
      knum.add_term(static_cast<int>(-2 * (m - t)), coeff);
    }
  }

  // (-p)^n C(N1, n) = (-p)^n N1^(n falling) / n!
  AsymptoticSeries den(AsymptoticSeries::kExactOrder, two_pq);
  den.add_term(0, RadicalPoly::rational_part(
                      pow_rational(-p, static_cast<long>(n)) / Rational(factorial(n)), two_pq));
  for (unsigned t = 0; t < n; ++t) {
    AsymptoticSeries factor(AsymptoticSeries::kExactOrder, two_pq);
    factor.add_term(-2, RadicalPoly::rational_part(Rational(1), two_pq));
    factor.add_term(0, RadicalPoly::rational_part(-Rational(i + static_cast<long>(t)), two_pq));
    den = den * factor;
  }

  AsymptoticSeries quotient = divide_to(knum, den, trunc);
  std::vector<ExpansionTerm> rows;
  for (unsigned j = 0; j < m_terms; ++j) {
    int e = 2 * static_cast<int>(l) + 2 * static_cast<int>(j);
    RadicalPoly c = quotient.coeff(e);
    if (!c.is_rational()) throw std::logic_error("corollary2_via_relation: w-odd coefficient");
    rows.push_back({-static_cast<long>(l) - static_cast<long>(j), c.a().renamed("v")});
  }
  return rows;
}

PReal theorem2_eval(const EdgeworthTable& table, unsigned n, unsigned M, long N, const PReal& x) {
  const long prec = x.precision();
  const Rational p = table.p();
  const Rational q = table.q();
  Rational two_npq = Rational(2 * N) * p * q;
  PReal xhat = PReal(Rational(N) * p, prec) + sqrt_rational(two_npq, prec) * x;

  PReal acc(prec);
  const unsigned kmax = std::min(n, M);
  for (unsigned k = 0; k <= kmax; ++k) {
    const unsigned s = n - k;
    PReal ff(1, prec);
    for (unsigned t = 0; t < s; ++t) {
      ff *= xhat + PReal(static_cast<long>(s) - static_cast<long>(t), prec);
    }
    Rational scalar = Rational(binomial(n, static_cast<long>(k))) *
                      Rational(falling_factorial(static_cast<long>(n), k));
    acc += PReal(scalar, prec) * ff * psi(table, PsiSpec{s, M + 1, p, N}, x);
  }
  PReal sigma = sqrt_rational(p * q, prec);
  PReal pref = exp(-(x * x)) /
               (sqrt(PReal(2 * N, prec) * pi(prec)) * sigma);
  return pref * PReal(pow_rational(-q, static_cast<long>(n)) / Rational(factorial(n)), prec) * acc;
}

PReal theorem2_eval_printed(const EdgeworthTable& table, unsigned n, unsigned M, long N,
                            const PReal& x) {
  const long prec = x.precision();
  const Rational p = table.p();
  const Rational q = table.q();
  Rational two_npq = Rational(2 * N) * p * q;
  PReal xhat = PReal(Rational(N) * p, prec) + sqrt_rational(two_npq, prec) * x;

  PReal acc(prec);
  const unsigned kmax = std::min(n, M);
  for (unsigned k = 0; k <= kmax; ++k) {
    const unsigned s = n - k;
    PReal ff(1, prec);
    for (unsigned t = 0; t < s; ++t) {
      ff *= xhat + PReal(static_cast<long>(s) - static_cast<long>(t), prec);
    }
    Rational scalar = Rational(binomial(n, static_cast<long>(k))) *
                      Rational(falling_factorial(static_cast<long>(n), k));
    acc += PReal(scalar, prec) * ff * psi(table, PsiSpec{s, M, p, N}, x);
  }
  PReal sigma = sqrt_rational(p * q, prec);
  PReal pref = exp(-(x * x)) / (sqrt(PReal(2 * N, prec) * pi(prec)) * sigma);
  return pref * PReal(pow_rational(-q, static_cast<long>(n)) / Rational(factorial(n)), prec) * acc;
}

std::pair<PReal, PReal> sharapudinov_eval(unsigned n, long N, const Rational& p, const PReal& x) {
  const long prec = x.precision();
  const Rational q = Rational(1) - p;
  const Rational npq = Rational(N) * p * q;
  PReal xhat = PReal(Rational(N) * p, prec) +
               sqrt_rational(Rational(2) * npq, prec) * x;

  PReal rho(prec);
  if (mpfr_integer_p(xhat.raw()) && xhat.sign() >= 0 && xhat <= PReal(N, prec)) {
    long xi = static_cast<long>(xhat.to_double());
    rho = PReal(weight_rho(N, p, xi), prec);
  } else {
    StirlingContext ctx{6, prec};
    rho = rho_noninteger(xhat, N, p, ctx);
  }

  KrawtchoukParams params(p, N, static_cast<long>(n));
  PReal kn = krawtchouk_poly(params).eval(xhat);

  PReal x2half = (x * x) / PReal(2, prec);
  PReal lhs = sqrt(PReal(Rational(2) * npq, prec) * pi(prec) *
                   PReal(Rational(factorial(n)), prec)) *
              pow_si(sqrt(PReal(npq, prec)), -static_cast<long>(n)) * rho * exp(x2half) * kn;
  PReal rhs = exp(-x2half) / sqrt(PReal(Rational(factorial(n)) * pow_rational(Rational(2),
                                                                              static_cast<long>(n)),
                                        prec)) *
              hermite(n).eval(x);
  return {lhs, rhs};
}

DerivativeClosedForms derivative_closed_forms(unsigned l, const Rational& p, long N,
                                              const Rational& v, long prec) {
  const Rational q = Rational(1) - p;
  const Rational pq = p * q;
  const Rational ll(static_cast<long>(l));
  DerivativeClosedForms out{PReal(prec), PReal(prec), PReal(prec), Rational(0), Rational(0)};
  out.tau1 = Rational(6) * (Rational(1) - 2 * p) * (2 * ll + 3) * (2 * ll + 1);
  out.tau2 = (2 * ll + 1) * (2 * ll + 3) * (Rational(1) + ll - (Rational(1) + 4 * ll) * pq);

  Rational bracket = (Rational(36) * ll * v * v + out.tau1 * v + out.tau2) /
                     (Rational(36) * pq * Rational(N));
  Rational lead = Rational(double_factorial(2 * static_cast<long>(l) - 1)) *
                  pow_rational(Rational(2), static_cast<long>(l));
  if (l % 2 != 0) lead = -lead;  // (-2)^l
  out.bracket_2l_printed = PReal(lead * (Rational(1) + bracket), prec);
  out.bracket_2l_corrected = PReal(lead * (Rational(1) - bracket), prec);

  Rational head = Rational(double_factorial(2 * static_cast<long>(l) + 1)) *
                  pow_rational(Rational(2), static_cast<long>(l));
  if (l % 2 == 0) head = -head;  // (-1)^(l+1) 2^l (2l+1)!!
  Rational lin = v + (Rational(1) - 2 * p) * (2 * ll + 3) / Rational(6);
  PReal scale = sqrt_rational(Rational(2) / (Rational(N) * pq), prec);
  out.deriv_2l_plus_1 = PReal(head * lin, prec) * scale;
  return out;
}

Rational m_v_simplified(const Rational& p, long N, const Rational& v) {
  const Rational q = Rational(1) - p;
  const Rational pq = p * q;
  return Rational(1) -
         (Rational(1) - pq - Rational(6) * v * (p - q)) / (Rational(12) * pq * Rational(N));
}

}  // namespace kraw
