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

#include "kraw/stirling.hpp"

#include <algorithm>
#include <stdexcept>

#include "kraw/combinatorics.hpp"
#include "kraw/edgeworth.hpp"
#include "kraw/orthopoly.hpp"

namespace kraw {

PReal f_m(const PReal& z, unsigned m) {
  if (z.is_zero()) throw std::domain_error("f_m: z = 0");
  const long prec = z.precision();
  PReal acc(prec);
  PReal zinv = PReal(1, prec) / z;
  PReal zpow = zinv;  // z^(-(2k-1)), starts at k=1
  PReal zinv2 = zinv * zinv;
  for (unsigned k = 1; k <= m; ++k) {
    Rational c = bernoulli_number(2 * k) / Rational(2 * k * (2 * k - 1));
    acc += PReal(c, prec) * zpow;
    zpow *= zinv2;
  }
  return acc;
}

PReal ln_gamma(const PReal& z, const StirlingContext& ctx) {
  if (z.sign() <= 0) throw std::domain_error("ln_gamma: z <= 0");
  const long prec = std::max(z.precision(), ctx.precision_bits);
  PReal zz = z.at_precision(prec);
  PReal shift(prec);
  while (zz < PReal(10, prec)) {
    shift -= log(zz);
    zz += PReal(1, prec);
  }
  PReal half(Rational(1, 2), prec);
  PReal ln2pi = log(PReal(2, prec) * pi(prec));
  return shift + (zz - half) * log(zz) - zz + half * ln2pi + f_m(zz, ctx.m);
}

PReal ln_gamma_error_bound(const PReal& z, const StirlingContext& ctx) {
  // First omitted term of the alternating-envelope tail; arguments below the
  // shift threshold are evaluated at the shifted point where the series ran.
  const long prec = std::max(z.precision(), ctx.precision_bits);
  PReal zz = z.at_precision(prec);
  if (zz < PReal(10, prec)) zz = PReal(10, prec);
  unsigned k = ctx.m + 1;
  Rational c = bernoulli_number(2 * k) / Rational(2 * k * (2 * k - 1));
  return abs(PReal(c, prec) * pow_si(zz, -static_cast<long>(2 * k - 1)));
}

PReal r_tau(const PReal& tau, const Rational& p) {
  const long prec = tau.precision();
  if (tau.sign() <= 0 || tau >= PReal(1, prec)) throw std::domain_error("r_tau: tau outside (0,1)");
  Rational q = Rational(1) - p;
  PReal pp(p, prec), qq(q, prec);
  PReal one(1, prec);
  PReal dev = tau - pp;
  return tau * log(tau / pp) + (one - tau) * log((one - tau) / qq) -
         dev * dev / (PReal(Rational(2) * p * q, prec));
}

PReal d_tau(const PReal& tau, const Rational& p) {
  const long prec = tau.precision();
  if (tau.sign() <= 0 || tau >= PReal(1, prec)) throw std::domain_error("d_tau: tau outside (0,1)");
  Rational q = Rational(1) - p;
  PReal pp(p, prec), qq(q, prec);
  PReal arg = PReal(1, prec) + (pp - tau) * (tau - qq) / PReal(p * q, prec);
  if (arg.sign() <= 0) throw std::domain_error("d_tau: log argument <= 0");
  return log(arg);
}

PReal phi_m(const PReal& x, long N, const Rational& p, const StirlingContext& ctx) {
  const long prec = std::max(x.precision(), ctx.precision_bits);
  Rational q = Rational(1) - p;
  Rational two_npq = Rational(2 * N) * p * q;
  PReal xhat = PReal(Rational(N) * p, prec) + sqrt_rational(two_npq, prec) * x.at_precision(prec);
  PReal nn(N, prec);
  if (xhat.sign() <= 0 || xhat >= nn) throw std::domain_error("phi_m: xhat outside (0, N)");
  PReal tau = xhat / nn;
  return f_m(nn, ctx.m) - f_m(xhat, ctx.m) - f_m(nn - xhat, ctx.m) - nn * r_tau(tau, p) -
         d_tau(tau, p) / PReal(2, prec);
}

PReal ln_rho_reconstructed(const PReal& x, long N, const Rational& p, const StirlingContext& ctx) {
  const long prec = std::max(x.precision(), ctx.precision_bits);
  PReal xx = x.at_precision(prec);
  Rational two_pi_npq_rat = Rational(2 * N) * p * (Rational(1) - p);
  PReal ln_norm = log(pi(prec) * PReal(two_pi_npq_rat, prec));  // ln(2 pi N pq)
  return -(xx * xx) - ln_norm / PReal(2, prec) + phi_m(xx, N, p, ctx);
}

PReal rho_noninteger(const PReal& xhat, long N, const Rational& p, const StirlingContext& ctx) {
  const long prec = std::max(xhat.precision(), ctx.precision_bits);
  PReal nn(N, prec);
  PReal one(1, prec);
  PReal xh = xhat.at_precision(prec);
  Rational q = Rational(1) - p;
  PReal lnrho = ln_gamma(nn + one, ctx) - ln_gamma(one + xh, ctx) - ln_gamma(nn + one - xh, ctx) +
                xh * log(PReal(p, prec)) + (nn - xh) * log(PReal(q, prec));
  return exp(lnrho);
}

ConvergenceReport lemma1_check(unsigned M, double A, const Rational& p, const GridSpec& grid,
                               long precision_bits) {
  grid.validate();
  const long prec = precision_bits;
  EdgeworthTable table(p, M);
  Rational q = Rational(1) - p;

  ConvergenceReport report;
  report.claim = "lemma1";
  report.precision_bits = prec;
  report.config = {{"claim", "lemma1"},
                   {"M", std::to_string(M)},
                   {"A", std::to_string(A)},
                   {"p", to_string(p)},
                   {"grid.base", std::to_string(grid.base)},
                   {"grid.ratio", std::to_string(grid.ratio)},
                   {"grid.count", std::to_string(grid.count)},
                   {"precision_bits", std::to_string(prec)}};

  for (long N : grid.n_values()) {
    Rational np = Rational(N) * p;
    Rational two_npq = Rational(2 * N) * p * q;
    PReal sd = sqrt_rational(two_npq, prec);
    PReal width = PReal(A, prec) * sd;
    long lo = static_cast<long>((PReal(np, prec) - width).to_double()) + 1;
    long hi = static_cast<long>((PReal(np, prec) + width).to_double());
    lo = std::max(lo, 1L);
    hi = std::min(hi, N - 1);

    PReal sup(prec);
    PReal rtN = sqrt(PReal(N, prec));
    for_each_lattice_weight(N, p, lo, hi, [&](long xh, const Rational& rho) {
      PReal x = PReal(Rational(xh) - np, prec) / sd;
      PReal phiM = petrov_density(table, M, N, x);
      if (phiM.is_zero()) return;
      PReal res = abs(rtN * PReal(rho, prec) / phiM - PReal(1, prec));
      if (res > sup) sup = res;
    });
    report.grid_n.push_back(N);
    report.residual.push_back(sup.to_double());
    double weighted = (sup * pow_si(sqrt(PReal(N, prec)), static_cast<long>(M))).to_double();
    report.weighted_residual.push_back(weighted);
  }
  finalize_report(report);
  return report;
}

}  // namespace kraw
