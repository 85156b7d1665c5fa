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

#ifndef KRAW_EDGEWORTH_HPP
#define KRAW_EDGEWORTH_HPP

#include <vector>

#include "kraw/combinatorics.hpp"
#include "kraw/preal.hpp"
#include "kraw/radical.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// Exact cumulants gamma_1..gamma_m of the single-trial Bernoulli(p) law.
/// gamma_2 = pq, gamma_3 = pq(1-2p), gamma_4 = pq(1-6pq).
struct CumulantTable {
  Rational p;
  std::vector<Rational> entries;  // entries[i-1] = gamma_i

  const Rational& gamma(unsigned i) const { return entries.at(i - 1); }
};

/// Moment-cumulant recursion on the exact raw moments (all equal to p).
CumulantTable bernoulli_cumulants(const Rational& p, unsigned m);

/// One summand of q~_nu: coefficient b (a constant element of Q + Q*w,
/// w^2 = 2pq) attached to the Hermite polynomial of index nu + 2s.
/// Summands are in bijection with weighted_partitions(nu).
struct EdgeworthSummand {
  WeightedPartition partition;
  unsigned s = 0;
  RadicalPoly b;  // constant
  unsigned hermite_index = 0;
};

struct EdgeworthTerm {
  unsigned nu = 0;
  std::vector<EdgeworthSummand> summands;
};

/// Memoized q~_nu / g~_{nu,r} machinery for a fixed p. Build once, then
/// read-only; safe to share across threads after construction.
class EdgeworthTable {
 public:
  EdgeworthTable(Rational p, unsigned max_nu);

  const Rational& p() const { return p_; }
  Rational q() const { return Rational(1) - p_; }
  const Rational& two_pq() const { return two_pq_; }
  unsigned max_nu() const { return static_cast<unsigned>(terms_.size()) - 1; }

  const EdgeworthTerm& term(unsigned nu) const { return terms_.at(nu); }

  /// q~_nu(x) = sum b_{nu,s} H_{nu+2s}(x); coefficients in Q + Q*w.
  const RadicalPoly& q_tilde(unsigned nu) const { return q_cache_.at(nu); }

  /// g~_{nu,r}(x) = (-1)^r sum b_{nu,s} H_{nu+2s+r}(x).
  RadicalPoly g_tilde(unsigned nu, unsigned r) const;

 private:
  Rational p_, two_pq_;
  std::vector<EdgeworthTerm> terms_;
  std::vector<RadicalPoly> q_cache_;
};

/// Convenience single-shot versions of the table lookups.
RadicalPoly q_tilde(unsigned nu, const Rational& p);
RadicalPoly g_tilde(unsigned nu, unsigned r, const Rational& p);

/// phi^M(x)/sqrt(N) in the paper's notation:
/// (1/(sqrt(2 pi) sigma)) e^(-x^2) sum_{nu<=M} q~_nu(x) N^(-nu/2).
PReal petrov_density(const EdgeworthTable& table, unsigned M, long N, const PReal& x);

/// The r-th derivative expansion of sqrt(N) rho(xhat(x)):
/// (1/(sqrt(2 pi) sigma)) e^(-x^2) sum_{nu<=M} g~_{nu,r}(x) N^(-nu/2).
PReal petrov_density_derivative(const EdgeworthTable& table, unsigned M, long N, unsigned r,
                                const PReal& x);

}  // namespace kraw

#endif  // KRAW_EDGEWORTH_HPP
