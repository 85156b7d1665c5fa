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

#ifndef KRAW_ORTHOPOLY_HPP
#define KRAW_ORTHOPOLY_HPP

#include <functional>
#include <optional>
#include <utility>

#include "kraw/poly.hpp"
#include "kraw/preal.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// Parameters of the Krawtchouk family: success probability p in (0,1),
/// lattice size N, polynomial degree n in [0, N].
struct KrawtchoukParams {
  Rational p;
  long N = 0;
  long n = 0;

  KrawtchoukParams(Rational p_, long N_, long n_);
  Rational q() const { return Rational(1) - p; }
};

/// A point on the lattice in its three coordinate systems:
///   xhat in [0, N],   v = xhat - Np,   x = v / sqrt(2Npq).
/// xhat and v are exact whenever the point was built from a rational
/// coordinate; x always carries the stated floating precision.
struct ScaledPoint {
  long N = 0;
  Rational p;
  std::optional<Rational> xhat;  // exact when known
  std::optional<Rational> v;
  PReal x;

  static ScaledPoint from_xhat(long N, const Rational& p, const Rational& xhat, long prec);
  static ScaledPoint from_v(long N, const Rational& p, const Rational& v, long prec);
  static ScaledPoint from_x(long N, const Rational& p, const PReal& x);

  /// Np + sqrt(2Npq)*x at the precision of x (uses the exact xhat if known).
  PReal xhat_real() const;
};

/// Normalized k_n^{(p)}(x, N) through the terminating hypergeometric sum:
/// (-p)^n C(N,n) sum_j [x^(j) n^(j) / (N^(j) j!)] p^(-j) (falling powers).
/// Exact for rational x; the ground-truth definition in this library.
Rational krawtchouk_hypergeometric(const KrawtchoukParams& params, const Rational& x);

/// Same value through the Rodrigues representation
/// (-q)^n/n! * Delta^n(rho(x) x^(n)) / rho(x); requires integer x with
/// 0 <= x <= N - n so all weight evaluations stay on the lattice.
Rational krawtchouk_rodrigues(const KrawtchoukParams& params, const Rational& x);

/// Same value through the discrete-Leibniz rewrite
/// (-q)^n/n! sum_k C(n,k) n^(k) (x+n-k)^(n-k) Delta^{n-k} rho(x) / rho(x).
Rational krawtchouk_leibniz(const KrawtchoukParams& params, const Rational& x);

/// Non-normalized K_n(x, p, N) = k_n / ((-p)^n C(N,n)).
Rational krawtchouk_nonnormalized(const KrawtchoukParams& params, const Rational& x);

/// k_n as an exact polynomial in x (degree n, leading coefficient 1/n!).
VPoly krawtchouk_poly(const KrawtchoukParams& params);

/// Binomial weight rho(x) = C(N,x) p^x q^(N-x), exact on the lattice.
/// Non-integer arguments go through stirling::rho_noninteger instead.
Rational weight_rho(long N, const Rational& p, long x);

/// Calls fn(xhat, rho(xhat)) for every lattice point in [xhat_lo, xhat_hi],
/// maintaining the exact weight incrementally (rho(x+1)/rho(x) is a small
/// rational). The workhorse behind the residual sweeps.
void for_each_lattice_weight(long N, const Rational& p, long xhat_lo, long xhat_hi,
                             const std::function<void(long, const Rational&)>& fn);

/// sum_x k_i(x) k_j(x) rho(x); equals C(N,j) (pq)^j delta_ij.
Rational orthogonality_sum(long N, const Rational& p, long i, long j);

/// K_x(n, p, N) == K_n(x, p, N), checked exactly.
bool self_duality_check(long N, const Rational& p, long n, long x);

/// Physicists' Hermite polynomial H_n via the three-term recurrence.
VPoly hermite(unsigned n);

/// H_n from the explicit even/odd closed forms (rising-factorial sums);
/// must agree with hermite() coefficient for coefficient.
VPoly hermite_explicit(unsigned n);

/// (He_n(x), D_n(x)) from H_n: He_n(x) = 2^(-n/2) H_n(x/sqrt 2),
/// D_n(x) = 2^(-n/2) e^(-x^2/4) H_n(x/sqrt 2).
std::pair<PReal, PReal> hermite_conversions(unsigned n, const PReal& x);

}  // namespace kraw

#endif  // KRAW_ORTHOPOLY_HPP
