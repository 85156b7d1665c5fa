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

#ifndef KRAW_STIRLING_HPP
#define KRAW_STIRLING_HPP

#include "kraw/preal.hpp"
#include "kraw/rational.hpp"
#include "kraw/verify.hpp"

namespace kraw {

struct StirlingContext {
  unsigned m = 6;  // correction order; truncation error O(z^(-2m-1))
  long precision_bits = PReal::kDefaultPrecision;
};

/// F_m(z) = sum_{k=1}^m B_{2k} / (2k(2k-1) z^(2k-1)); F_0 = 0. Rejects z = 0.
PReal f_m(const PReal& z, unsigned m);

/// (z - 1/2) ln z - z + ln(2 pi)/2 + F_m(z) for z >= 10; smaller positive z
/// is lifted through ln Gamma(z) = ln Gamma(z+1) - ln z. Rejects z <= 0.
/// Truncation error O(z^(-2m-1)).
PReal ln_gamma(const PReal& z, const StirlingContext& ctx);

/// Upper bound on the F_m truncation error at z (first omitted term).
PReal ln_gamma_error_bound(const PReal& z, const StirlingContext& ctx);

/// r(tau) = tau ln(tau/p) + (1-tau) ln((1-tau)/q) - (tau-p)^2/(2pq).
/// Near tau = p this behaves as (p-q)(tau-p)^3/(6 p^2 q^2); in the scaled
/// variable N r(xhat/N) = (sqrt2/3)((2p-1)/sqrt(pq)) x^3 N^(-1/2) + O(1/N).
PReal r_tau(const PReal& tau, const Rational& p);

/// D(tau) = ln(1 + (p-tau)(tau-q)/(pq));
/// D(xhat/N) = -sqrt2 (2p-1)/sqrt(pq) x N^(-1/2) + O(1/N).
PReal d_tau(const PReal& tau, const Rational& p);

/// Phi_m(x) = F_m(N) - F_m(xhat) - F_m(N-xhat) - N r(xhat/N) - D(xhat/N)/2
/// with xhat = Np + sqrt(2Npq) x;  ln rho(xhat) = -x^2 - ln(2 pi N pq)/2
/// + S_N^0(x) and S_N^0 = Phi_m + O(N^(-2m-1)).
PReal phi_m(const PReal& x, long N, const Rational& p, const StirlingContext& ctx);

/// ln rho(xhat) reconstructed from the quadratic term plus Phi_m.
PReal ln_rho_reconstructed(const PReal& x, long N, const Rational& p, const StirlingContext& ctx);

/// rho at arbitrary (non-lattice) xhat through the ln Gamma evaluator:
/// exp(ln Gamma(N+1) - ln Gamma(1+xhat) - ln Gamma(N+1-xhat)
///     + xhat ln p + (N-xhat) ln q).
PReal rho_noninteger(const PReal& xhat, long N, const Rational& p, const StirlingContext& ctx);

/// sup over a real-x grid in [-A, A] of |sqrt(N) rho(xhat(x)) / phi^M(x) - 1|
/// per N, weighted by N^(M/2); reports the decreasing trend. rho is evaluated
/// exactly on lattice points (the Theorem 1 reading of the bound).
ConvergenceReport lemma1_check(unsigned M, double A, const Rational& p, const GridSpec& grid,
                               long precision_bits = PReal::kDefaultPrecision);

}  // namespace kraw

#endif  // KRAW_STIRLING_HPP
