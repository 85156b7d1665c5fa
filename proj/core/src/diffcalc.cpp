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

#include "kraw/diffcalc.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace kraw {

namespace {
void check_range(size_t size, unsigned s, size_t x0, size_t stride) {
  if (stride == 0) throw std::invalid_argument("forward_difference: zero stride");
  if (x0 + static_cast<size_t>(s) * stride >= size) {
    throw std::out_of_range("forward_difference: tabulation does not cover x0..x0+s*stride");
  }
}
}  // namespace

Rational forward_difference(std::span<const Rational> f, unsigned s, size_t x0, size_t stride) {
  check_range(f.size(), s, x0, stride);
  Rational acc(0);
  for (unsigned j = 0; j <= s; ++j) {
    Rational term = Rational(binomial(s, static_cast<long>(j))) * f[x0 + j * stride];
    if ((s - j) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

PReal forward_difference(std::span<const PReal> f, unsigned s, size_t x0, size_t stride) {
  check_range(f.size(), s, x0, stride);
  PReal acc(f[x0].precision());
  for (unsigned j = 0; j <= s; ++j) {
    PReal term = PReal(Rational(binomial(s, static_cast<long>(j))), f[x0].precision()) *
                 f[x0 + j * stride];
    if ((s - j) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

namespace {
// Coefficients of (e^t - 1)^s through order t^maxdeg.
std::vector<Rational> exp_minus_one_power(unsigned s, unsigned maxdeg) {
  std::vector<Rational> base(maxdeg + 1, Rational(0));
  for (unsigned r = 1; r <= maxdeg; ++r) base[r] = Rational(1) / Rational(factorial(r));
  std::vector<Rational> acc(maxdeg + 1, Rational(0));
  acc[0] = 1;
  for (unsigned rep = 0; rep < s; ++rep) {
    std::vector<Rational> next(maxdeg + 1, Rational(0));
    for (unsigned a = 0; a <= maxdeg; ++a) {
      if (acc[a] == 0) continue;
      for (unsigned b = 1; a + b <= maxdeg; ++b) next[a + b] += acc[a] * base[b];
    }
    acc = std::move(next);
  }
  return acc;
}
}  // namespace

Rational a_coefficient(unsigned s, unsigned j) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, Rational> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(s, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Rational> c = exp_minus_one_power(s, s + j);
  for (unsigned jj = 0; jj <= j; ++jj) cache[{s, jj}] = c[s + jj];
  return cache[key];
}

Rational a_coefficient_multinomial(unsigned s, unsigned j) {
  // Enumerate (k_1..k_{j+1}) with sum k_r = s and sum r k_r = s + j.
  Rational total(0);
  std::vector<unsigned> k(j + 2, 0);
  // Recursive lambda over r = 1..j+1.
  std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned r, unsigned used,
                                                              unsigned weight) {
    if (r == j + 2) {
      if (used == s && weight == s + j) {
        Rational prod(1);
        for (unsigned rr = 1; rr <= j + 1; ++rr) {
          if (k[rr] == 0) continue;
          prod /= Rational(factorial(k[rr]));
          prod *= pow_rational(Rational(1) / Rational(factorial(rr)), k[rr]);
        }
        total += Rational(factorial(s)) * prod;
      }
      return;
    }
    for (unsigned kr = 0; used + kr <= s && weight + r * kr <= s + j; ++kr) {
      k[r] = kr;
      rec(r + 1, used + kr, weight + r * kr);
      k[r] = 0;
    }
  };
  rec(1, 0, 0);
  return total;
}

PReal truncated_delta_h(std::span<const PReal> derivatives, unsigned s, unsigned K,
                        const PReal& h) {
  if (derivatives.size() < static_cast<size_t>(K) + 1) {
    throw std::invalid_argument("truncated_delta_h: need derivatives of orders s..s+K");
  }
  const long prec = h.precision();
  PReal acc(prec);
  PReal hp = pow_si(h, static_cast<long>(s));
  for (unsigned i = 0; i <= K; ++i) {
    acc += PReal(a_coefficient(s, i), prec) * derivatives[i] * hp;
    hp *= h;
  }
  return acc;
}

PReal psi(const EdgeworthTable& table, const PsiSpec& spec, const PReal& x) {
  if (spec.K > 0 && table.max_nu() + 1 < spec.K) {
    throw std::invalid_argument("psi: EdgeworthTable too shallow for K");
  }
  const long prec = x.precision();
  Rational two_npq = Rational(2 * spec.N) * spec.p * (Rational(1) - spec.p);
  PReal h = PReal(1, prec) / sqrt_rational(two_npq, prec);
  PReal rt_n_inv = PReal(1, prec) / sqrt(PReal(spec.N, prec));

  PReal acc(prec);
  PReal hp = pow_si(h, static_cast<long>(spec.s));
  for (unsigned i = 0; i <= spec.K; ++i) {
    if (spec.K >= 1 + i) {  // inner sum nu = 0..K-1-i, empty otherwise
      PReal inner(prec);
      PReal scale(1, prec);
      for (unsigned nu = 0; nu + 1 + i <= spec.K; ++nu) {
        inner += table.g_tilde(nu, spec.s + i).eval(x) * scale;
        scale *= rt_n_inv;
      }
      acc += PReal(a_coefficient(spec.s, i), prec) * inner * hp;
    }
    hp *= h;
  }
  return acc;
}

PReal delta_s_rho_expansion(const EdgeworthTable& table, unsigned s, unsigned M, long N,
                            const PReal& x) {
  const long prec = x.precision();
  PReal sigma = sqrt_rational(table.p() * table.q(), prec);
  PReal pref = exp(-(x * x)) / (sqrt(PReal(2, prec) * pi(prec)) * sigma);
  return pref * psi(table, PsiSpec{s, M + 1, table.p(), N}, x);
}

}  // namespace kraw
