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

#ifndef KRAW_SERIES_HPP
#define KRAW_SERIES_HPP

#include <map>

#include "kraw/radical.hpp"

namespace kraw {

/// Truncated Laurent series in the formal small parameter eps = N^(-1/2),
/// with coefficients in Q[v][w]/(w^2 - 2pq). A series with truncation T
/// represents  sum_{e < T} c_e eps^e + O(eps^T);  terms at exponent >= T are
/// discarded on entry. Products and quotients propagate T by the usual
/// min rule so the recorded truncation is always a valid error order.
class AsymptoticSeries {
 public:
  /// Truncation order used for series that terminate exactly.
  static constexpr int kExactOrder = 1 << 20;

  AsymptoticSeries() : trunc_(0), two_pq_(0) {}
  AsymptoticSeries(int truncation_order, Rational two_pq);

  int truncation_order() const { return trunc_; }
  const Rational& two_pq() const { return two_pq_; }
  bool is_zero() const { return t_.empty(); }

  /// Smallest exponent carrying a nonzero coefficient; truncation_order()
  /// when there is none (a zero series is only known to its truncation).
  int min_order() const;

  const std::map<int, RadicalPoly>& terms() const { return t_; }
  /// Coefficient at exponent e (zero element of the ring if absent).
  RadicalPoly coeff(int e) const;
  void add_term(int e, const RadicalPoly& c);

  AsymptoticSeries operator-() const;
  AsymptoticSeries& operator+=(const AsymptoticSeries& o);
  AsymptoticSeries& operator-=(const AsymptoticSeries& o);
  friend AsymptoticSeries operator+(AsymptoticSeries a, const AsymptoticSeries& b) { return a += b; }
  friend AsymptoticSeries operator-(AsymptoticSeries a, const AsymptoticSeries& b) { return a -= b; }
  friend AsymptoticSeries operator*(const AsymptoticSeries& a, const AsymptoticSeries& b);
  /// Division; the divisor's lowest-order coefficient must be a constant
  /// invertible element (which is all the expansion engine ever divides by:
  /// the Petrov series has leading coefficient 1).
  friend AsymptoticSeries operator/(const AsymptoticSeries& a, const AsymptoticSeries& b);

  /// Division with the result truncation capped at T. Needed when both inputs
  /// terminate (their quotient usually does not).
  friend AsymptoticSeries divide_to(const AsymptoticSeries& a, const AsymptoticSeries& b, int T);

  AsymptoticSeries& operator*=(const RadicalPoly& c);
  AsymptoticSeries& operator*=(const Rational& c);

  /// Multiply by eps^k (shifts exponents and the truncation).
  AsymptoticSeries& shift(int k);
  /// Lower the truncation to T, discarding terms at exponent >= T.
  AsymptoticSeries& truncate_to(int T);

  /// All stored exponents even (only integer powers of N present).
  bool only_even_powers() const;
  /// No coefficient carries a w-odd part.
  bool w_free() const;

 private:
  void check_ring(const AsymptoticSeries& o) const;
  std::map<int, RadicalPoly> t_;
  int trunc_;
  Rational two_pq_;
};

}  // namespace kraw

#endif  // KRAW_SERIES_HPP
