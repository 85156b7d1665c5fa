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

#ifndef KRAW_EXPANSION_HPP
#define KRAW_EXPANSION_HPP

#include <string>
#include <utility>
#include <vector>

#include "kraw/edgeworth.hpp"
#include "kraw/poly.hpp"
#include "kraw/preal.hpp"
#include "kraw/rational.hpp"
#include "kraw/series.hpp"

namespace kraw {

/// One row of the integer-power expansion k_n(Np+v) = sum c_j(v) N^power.
struct ExpansionTerm {
  long n_power = 0;
  VPoly coeff;  // polynomial in v
};

struct ExpansionResult {
  long n = 0;
  Rational p;
  std::vector<ExpansionTerm> terms;  // descending powers of N
  /// Exponent of N of the first neglected order (terms are valid above it).
  Rational residual_order;
  std::string regime;
  /// The expansion terminated: the remainder is identically zero.
  bool exact = false;

  /// Exact evaluation of the retained terms at rational N and v.
  Rational eval(const Rational& N, const Rational& v) const;
  const VPoly* coeff_at(long n_power) const;
};

/// c_j(v) of the Krawtchouk expansion through the density machinery: the
/// series for rho*k_n (difference-operator form) divided by the Petrov series
/// for rho, with x = v*eps/w, w^2 = 2pq, eps^2 = 1/N. Asserts that only
/// integer powers of N survive and every w-odd part cancels.
ExpansionResult symbolic_expansion(unsigned n, unsigned m_terms, const Rational& p);

/// Independent exact route: k_n(Np+v) expanded directly as a bivariate
/// polynomial in N and v (the hypergeometric sum is polynomial, so this
/// terminates). Oracle for symbolic_expansion.
ExpansionResult krawtchouk_series_exact(unsigned n, const Rational& p);

/// The t-coefficients of the two simplified-corollary displays.
/// t2 carries a sign correction relative to the printed form: exact expansion
/// of k_{2l}(Np+v) forces t2 = (l-1)(1+4l-(16l-5)pq), where the display prints
/// +(16l-5)pq (invisible at l = 1, where t2 = 0). t2_printed keeps the printed
/// variant for the hypothesis tests.
struct CorollaryCoeffs {
  unsigned l = 0;
  Rational t1, t2;          // k_n display (t2 corrected)
  Rational t2_printed;      // as printed
  Rational t1_mod, t2_mod;  // K_n(.,p,N-i) display: t1, t2 - 9pq(i+2l-1)
};
CorollaryCoeffs corollary_coeffs(unsigned l, const Rational& p, long i);

/// Displayed simplified expansion of k_n(Np+v) (two orders for even n, one
/// for odd n), as exact polynomial rows in v.
std::vector<ExpansionTerm> corollary1_terms(unsigned n, const Rational& p);

/// Exact rational evaluation of the displayed form at (N, v).
Rational corollary1_exact(unsigned n, const Rational& p, const Rational& N, const Rational& v);
PReal corollary1_eval(unsigned n, const Rational& p, long N, const Rational& v, long prec);

/// Displayed simplified expansion of K_n(x, p, N-i) with v = x - Np. The odd
/// case carries a sign correction relative to the printed display: the printed
/// relation between K_n and k_n is inverted, which drops a factor (-1)^n; the
/// exact-identity cross-check (see tests) arbitrates. Rows are coefficients of
/// N^(-l) and N^(-l-1) (even n), or N^(-l-1) (odd n), polynomials in v.
std::vector<ExpansionTerm> corollary2_terms(unsigned n, const Rational& p, long i);
Rational corollary2_exact(unsigned n, const Rational& p, const Rational& N, long i,
                          const Rational& v);
PReal corollary2_eval(unsigned n, const Rational& p, long N, long i, const Rational& v,
                      long prec);

/// K_n(Np+v, p, N-i) re-expanded exactly through the k_n route:
/// k_n(N1 p + v1, N1) / ((-p)^n C(N1,n)) with N1 = N-i, v1 = v+ip, as a
/// truncated series in 1/N. Cross-check for corollary2_terms.
std::vector<ExpansionTerm> corollary2_via_relation(unsigned n, const Rational& p, long i,
                                                   unsigned m_terms);

/// Theorem-2 approximant of rho(xhat) k_n(xhat):
/// (e^(-x^2)/(sqrt(2 pi N) sigma)) ((-q)^n/n!) sum_{k<=min(n,M)} C(n,k) n^(k)
/// (xhat+n-k)^(n-k) psi_{n-k}^{M+1}(x).
/// psi is taken at truncation M+1 (the Delta^s rho form with K = M+1): the
/// printed superscript M makes the n=0 case collapse and misses the claimed
/// residual order; with M+1 the n=0 case reduces to the Petrov density at
/// order M exactly. Residual contract: O(N^((n-M-2)/2)).
PReal theorem2_eval(const EdgeworthTable& table, unsigned n, unsigned M, long N, const PReal& x);

/// Literal printed form (psi superscript M) kept for comparison runs.
PReal theorem2_eval_printed(const EdgeworthTable& table, unsigned n, unsigned M, long N,
                            const PReal& x);

/// Both sides of the Sharapudinov normalization:
/// lhs = (2Npq pi n!)^(1/2) (Npq)^(-n/2) rho(xhat) e^(x^2/2) k_n(xhat),
/// rhs = e^(-x^2/2) (2^n n!)^(-1/2) H_n(x);  lhs - rhs = O(n^(7/4) N^(-1/2)).
std::pair<PReal, PReal> sharapudinov_eval(unsigned n, long N, const Rational& p, const PReal& x);

/// The two closed-form derivative displays from the simplified-corollary
/// proof, evaluated at (l, v, N). The bracket display
/// (2l-1)!! (-2)^l (1 +/- (36 l v^2 + tau1 v + tau2)/(36 pq N)) belongs to the
/// derivative order 2l and needs the minus sign (at l = 0 the minus variant
/// is the simplified-M(v) display; the printed plus variant is kept for the
/// record). The sqrt(2/(Npq)) display belongs to order 2l+1 and is correct
/// as printed.
struct DerivativeClosedForms {
  PReal bracket_2l_printed;    // 1 + (36 l v^2 + tau1 v + tau2)/(36 pq N) variant
  PReal bracket_2l_corrected;  // 1 - (...) variant; matches d^{2l}/dx^{2l}
  PReal deriv_2l_plus_1;       // matches d^{2l+1}/dx^{2l+1}
  Rational tau1, tau2;
};
DerivativeClosedForms derivative_closed_forms(unsigned l, const Rational& p, long N,
                                              const Rational& v, long prec);

/// psi(x) rho(xhat) with x = v/sqrt(2Npq): 1 - (1 - pq - 6v(p-q))/(12 pq N) + o(1/N).
Rational m_v_simplified(const Rational& p, long N, const Rational& v);

}  // namespace kraw

#endif  // KRAW_EXPANSION_HPP
