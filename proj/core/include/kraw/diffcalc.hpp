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

#ifndef KRAW_DIFFCALC_HPP
#define KRAW_DIFFCALC_HPP

#include <span>
#include <stdexcept>

#include "kraw/combinatorics.hpp"
#include "kraw/edgeworth.hpp"
#include "kraw/preal.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// s-fold forward difference of tabulated values with a given index stride:
/// sum_j (-1)^(s-j) C(s,j) f[x0 + j*stride]. The grid spacing (1 or h) only
/// affects what the caller takes the result to mean.
Rational forward_difference(std::span<const Rational> f, unsigned s, size_t x0,
                            size_t stride = 1);
PReal forward_difference(std::span<const PReal> f, unsigned s, size_t x0, size_t stride = 1);

/// a_{s,j}: coefficient of t^(s+j) in (e^t - 1)^s, exact. Memoized.
/// a_{s,0} = 1, a_{s,1} = s/2, a_{s,2} = s(3s+1)/24; row s=1 is 1/(j+1)!.
Rational a_coefficient(unsigned s, unsigned j);

/// Same number from the multinomial expansion of (sum_r t^r/r!)^s: sum over
/// (k_1..k_{j+1}) with sum k_r = s and sum r k_r = s+j of
/// s! prod (1/k_r!)(1/r!)^(k_r). Cross-check route for a_coefficient.
Rational a_coefficient_multinomial(unsigned s, unsigned j);

/// Truncated h-step difference operator: sum_{i<=K} a_{s,i} f^(s+i)(x) h^(s+i).
/// derivatives[i] must hold f^(s+i)(x) for i = 0..K. The omitted tail is
/// O(h^(K+s+1)) for analytic f.
PReal truncated_delta_h(std::span<const PReal> derivatives, unsigned s, unsigned K,
                        const PReal& h);

struct PsiSpec {
  unsigned s = 0;
  unsigned K = 0;
  Rational p;
  long N = 0;
};

/// psi_s^K(x) = sum_{i<=K} a_{s,i} sum_{nu<=K-1-i} g~_{nu,s+i}(x) N^(-nu/2) h^(s+i)
/// with h = (2Npq)^(-1/2). Inner sums with K-1-i < 0 are empty; psi_s^0 = 0.
PReal psi(const EdgeworthTable& table, const PsiSpec& spec, const PReal& x);

/// The bracket of the Delta^s rho expansion at truncation K = M+1:
/// (e^(-x^2)/(sqrt(2 pi) sigma)) sum_{i<=M+1} a_{s,i} sum_{nu<=M-i} g~_{nu,s+i}(x)
/// N^(-nu/2) h^(s+i);  approximates sqrt(N) Delta_h^s rho(xhat(x)).
/// Identical to (e^(-x^2)/(sqrt(2 pi) sigma)) psi_s^{M+1}(x).
PReal delta_s_rho_expansion(const EdgeworthTable& table, unsigned s, unsigned M, long N,
                            const PReal& x);

}  // namespace kraw

#endif  // KRAW_DIFFCALC_HPP
