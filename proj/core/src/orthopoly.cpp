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

#include "kraw/orthopoly.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

#include "kraw/combinatorics.hpp"

namespace kraw {

KrawtchoukParams::KrawtchoukParams(Rational p_, long N_, long n_)
    : p(std::move(p_)), N(N_), n(n_) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("krawtchouk: p must lie in (0,1)");
  if (N <= 0) throw std::invalid_argument("krawtchouk: N must be positive");
  if (n < 0 || n > N) throw std::invalid_argument("krawtchouk: n must lie in [0, N]");
}

ScaledPoint ScaledPoint::from_xhat(long N, const Rational& p, const Rational& xhat, long prec) {
  ScaledPoint s;
  s.N = N;
  s.p = p;
  s.xhat = xhat;
  s.v = xhat - Rational(N) * p;
  Rational two_npq = Rational(2 * N) * p * (Rational(1) - p);
  s.x = PReal(*s.v, prec) / sqrt_rational(two_npq, prec);
  return s;
}

ScaledPoint ScaledPoint::from_v(long N, const Rational& p, const Rational& v, long prec) {
  return from_xhat(N, p, Rational(N) * p + v, prec);
}

ScaledPoint ScaledPoint::from_x(long N, const Rational& p, const PReal& x) {
  ScaledPoint s;
  s.N = N;
  s.p = p;
  s.x = x;
  return s;
}

PReal ScaledPoint::xhat_real() const {
  long prec = x.precision();
  if (xhat) return PReal(*xhat, prec);
  Rational two_npq = Rational(2 * N) * p * (Rational(1) - p);
  return PReal(Rational(N) * p, prec) + sqrt_rational(two_npq, prec) * x;
}

Rational krawtchouk_hypergeometric(const KrawtchoukParams& params, const Rational& x) {
  // sum_j x^(j) n^(j) / (N^(j) j! p^j), then scale by (-p)^n C(N,n).
  // Incremental term ratio keeps every step a small rational update.
  const long n = params.n, N = params.N;
  Rational sum(1);
  Rational term(1);
  for (long j = 1; j <= n; ++j) {
    // term_j / term_{j-1} = -(x-j+1)(n-j+1) / ((N-j+1) j p)
    term *= -(x - Rational(j - 1)) * Rational(n - j + 1);
    term /= Rational(N - j + 1) * Rational(j) * params.p;
    sum += term;
  }
  Rational scale = pow_rational(-params.p, n) * Rational(binomial(N, n));
  return scale * sum;
}

namespace {
void require_lattice_window(const KrawtchoukParams& params, const Rational& x) {
  if (!is_integer(x)) {
    throw std::invalid_argument("difference-route evaluation needs integer x");
  }
  long xi = to_long(x.get_num());
  if (xi < 0 || xi + params.n > params.N) {
    throw std::invalid_argument("difference-route evaluation needs 0 <= x <= N - n");
  }
}
}  // namespace

Rational krawtchouk_rodrigues(const KrawtchoukParams& params, const Rational& x) {
  require_lattice_window(params, x);
  const long n = params.n, N = params.N;
  const long xi = to_long(x.get_num());
  // Delta^n of f(t) = rho(t) t^(n) evaluated at xi.
  Rational acc(0);
  for (long j = 0; j <= n; ++j) {
    Rational f = weight_rho(N, params.p, xi + j) *
                 Rational(falling_factorial(xi + j, static_cast<unsigned>(n)));
    Rational c = Rational(binomial(static_cast<unsigned long>(n), j));
    acc += ((n - j) % 2 == 0 ? c : -c) * f;
  }
  Rational pref = pow_rational(-params.q(), n) / Rational(factorial(static_cast<unsigned long>(n)));
  return pref * acc / weight_rho(N, params.p, xi);
}

Rational krawtchouk_leibniz(const KrawtchoukParams& params, const Rational& x) {
  require_lattice_window(params, x);
  const long n = params.n, N = params.N;
  const long xi = to_long(x.get_num());
  Rational acc(0);
  for (long k = 0; k <= n; ++k) {
    const long s = n - k;  // order of the difference hitting rho
    Rational delta(0);
    for (long j = 0; j <= s; ++j) {
      Rational c = Rational(binomial(static_cast<unsigned long>(s), j));
      delta += ((s - j) % 2 == 0 ? c : -c) * weight_rho(N, params.p, xi + j);
    }
    Rational piece = Rational(binomial(static_cast<unsigned long>(n), k)) *
                     Rational(falling_factorial(n, static_cast<unsigned>(k))) *
                     Rational(falling_factorial(xi + n - k, static_cast<unsigned>(n - k))) * delta;
    acc += piece;
  }
  Rational pref = pow_rational(-params.q(), n) / Rational(factorial(static_cast<unsigned long>(n)));
  return pref * acc / weight_rho(N, params.p, xi);
}

Rational krawtchouk_nonnormalized(const KrawtchoukParams& params, const Rational& x) {
  Rational scale = pow_rational(-params.p, params.n) * Rational(binomial(params.N, params.n));
  return krawtchouk_hypergeometric(params, x) / scale;
}

VPoly krawtchouk_poly(const KrawtchoukParams& params) {
  const long n = params.n, N = params.N;
  VPoly sum("x");
  for (long j = 0; j <= n; ++j) {
    // x^(j) as a polynomial, times (-1)^j n^(j) / (N^(j) j! p^j)
    VPoly ff = VPoly::constant(Rational(1));
    for (long t = 0; t < j; ++t) ff *= VPoly({Rational(-t), Rational(1)});
    Rational c = Rational(falling_factorial(n, static_cast<unsigned>(j))) /
                 (Rational(falling_factorial(N, static_cast<unsigned>(j))) *
                  Rational(factorial(static_cast<unsigned long>(j))) * pow_rational(params.p, j));
    if (j % 2 != 0) c = -c;
    sum += ff * c;
  }
  Rational scale = pow_rational(-params.p, n) * Rational(binomial(N, n));
  return sum * scale;
}

Rational weight_rho(long N, const Rational& p, long x) {
  if (N <= 0) throw std::invalid_argument("weight_rho: N must be positive");
  if (x < 0 || x > N) throw std::invalid_argument("weight_rho: x outside [0, N]");
  Rational q = Rational(1) - p;
  return Rational(binomial(static_cast<unsigned long>(N), x)) * pow_rational(p, x) *
         pow_rational(q, N - x);
}

void for_each_lattice_weight(long N, const Rational& p, long xhat_lo, long xhat_hi,
                             const std::function<void(long, const Rational&)>& fn) {
  if (xhat_lo < 0 || xhat_hi > N) throw std::invalid_argument("lattice window outside [0, N]");
  if (xhat_lo > xhat_hi) return;
  Rational q = Rational(1) - p;
  Rational rho = weight_rho(N, p, xhat_lo);
  for (long x = xhat_lo;; ++x) {
    fn(x, rho);
    if (x == xhat_hi) break;
    rho *= Rational(N - x) * p;
    rho /= Rational(x + 1) * q;
  }
}

Rational orthogonality_sum(long N, const Rational& p, long i, long j) {
  if (i < 0 || i > N || j < 0 || j > N) {
    throw std::invalid_argument("orthogonality_sum: indices outside [0, N]");
  }
  KrawtchoukParams pi(p, N, i), pj(p, N, j);
  Rational acc(0);
  for (long x = 0; x <= N; ++x) {
    Rational kx(x);
    acc += krawtchouk_hypergeometric(pi, kx) * krawtchouk_hypergeometric(pj, kx) *
           weight_rho(N, p, x);
  }
  return acc;
}

bool self_duality_check(long N, const Rational& p, long n, long x) {
  if (n < 0 || n > N || x < 0 || x > N) {
    throw std::invalid_argument("self_duality_check: indices outside [0, N]");
  }
  Rational lhs = krawtchouk_nonnormalized(KrawtchoukParams(p, N, x), Rational(n));
  Rational rhs = krawtchouk_nonnormalized(KrawtchoukParams(p, N, n), Rational(x));
  return lhs == rhs;
}

VPoly hermite(unsigned n) {
  static std::mutex mu;
  static std::vector<VPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) {
    cache.push_back(VPoly::constant(Rational(1)));            // H_0
    cache.push_back(VPoly::monomial(Rational(2), 1));         // H_1
  }
  while (cache.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.size()) - 1;     // have H_m
    VPoly next = VPoly::monomial(Rational(2), 1) * cache[m] -
                 cache[m - 1] * Rational(2 * static_cast<long>(m));
    cache.push_back(std::move(next));
  }
  return cache[n];
}

VPoly hermite_explicit(unsigned n) {
  const unsigned l = n / 2;
  // rising factorial (-l)^(j (rising)) = (-l)(-l+1)...(-l+j-1)
  auto rising = [](long a, unsigned j) {
    Rational out(1);
    for (unsigned t = 0; t < j; ++t) out *= Rational(a + static_cast<long>(t));
    return out;
  };
  VPoly sum("x");
  if (n % 2 == 0) {
    sum += VPoly::constant(Rational(1));
    for (unsigned j = 1; j <= l; ++j) {
      Rational c = pow_rational(Rational(4), j) * rising(-static_cast<long>(l), j) /
                   Rational(factorial(2 * j));
      sum += VPoly::monomial(c, 2 * j);
    }
    Rational pref = Rational(double_factorial(2 * static_cast<long>(l) - 1)) *
                    pow_rational(Rational(2), l);
    if (l % 2 != 0) pref = -pref;
    return sum * pref;
  }
  sum += VPoly::monomial(Rational(1), 1);
  for (unsigned j = 1; j <= l; ++j) {
    Rational c = pow_rational(Rational(4), j) * rising(-static_cast<long>(l), j) /
                 Rational(factorial(2 * j + 1));
    sum += VPoly::monomial(c, 2 * j + 1);
  }
  Rational pref = Rational(double_factorial(2 * static_cast<long>(l) + 1)) *
                  pow_rational(Rational(2), l + 1);
  if (l % 2 != 0) pref = -pref;
  return sum * pref;
}

std::pair<PReal, PReal> hermite_conversions(unsigned n, const PReal& x) {
  const long prec = x.precision();
  PReal rt2 = sqrt_rational(Rational(2), prec);
  PReal hn = hermite(n).eval(x / rt2);
  PReal scale = pow_si(rt2, -static_cast<long>(n));  // 2^(-n/2)
  PReal he = scale * hn;
  PReal d = he * exp(-(x * x) / PReal(4, prec));
  return {he, d};
}

}  // namespace kraw
