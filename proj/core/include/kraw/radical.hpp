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

#ifndef KRAW_RADICAL_HPP
#define KRAW_RADICAL_HPP

#include "kraw/poly.hpp"
#include "kraw/preal.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// Element a(x) + b(x)*w of Q[x][w]/(w^2 - two_pq), with two_pq a fixed
/// positive rational (w stands for sqrt(2pq)). Reduction is eager: no power
/// of w above 1 is ever stored. Constant elements (degree <= 0 in x) double
/// as the scalar coefficients b_{nu,s} of the Edgeworth machinery.
class RadicalPoly {
 public:
  RadicalPoly() : two_pq_(0) {}  // uninitialized ring; only zero is valid
  explicit RadicalPoly(Rational two_pq, std::string var = "x");
  RadicalPoly(VPoly a, VPoly b, Rational two_pq);

  static RadicalPoly rational_part(const Rational& c, const Rational& two_pq);
  /// c * w^k with any integer k (negative powers divide by two_pq).
  static RadicalPoly w_power(const Rational& c, long k, const Rational& two_pq);

  const VPoly& a() const { return a_; }
  const VPoly& b() const { return b_; }
  const Rational& two_pq() const { return two_pq_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// true iff the w-part vanishes identically.
  bool is_rational() const { return b_.is_zero(); }
  bool is_constant() const { return a_.degree() <= 0 && b_.degree() <= 0; }

  RadicalPoly operator-() const;
  RadicalPoly& operator+=(const RadicalPoly& o);
  RadicalPoly& operator-=(const RadicalPoly& o);
  RadicalPoly& operator*=(const RadicalPoly& o);
  RadicalPoly& operator*=(const Rational& s);

  friend RadicalPoly operator+(RadicalPoly a, const RadicalPoly& b) { return a += b; }
  friend RadicalPoly operator-(RadicalPoly a, const RadicalPoly& b) { return a -= b; }
  friend RadicalPoly operator*(RadicalPoly a, const RadicalPoly& b) { return a *= b; }
  friend RadicalPoly operator*(RadicalPoly a, const Rational& s) { return a *= s; }
  friend RadicalPoly operator*(const Rational& s, RadicalPoly a) { return a *= s; }

  friend bool operator==(const RadicalPoly& x, const RadicalPoly& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const RadicalPoly& x, const RadicalPoly& y) { return !(x == y); }

  /// Multiply by w^k in place (k may be negative).
  RadicalPoly& mul_w_power(long k);

  /// Inverse of a constant element: (a - b*w) / (a^2 - two_pq*b^2).
  RadicalPoly inverse_constant() const;

  PReal eval(const PReal& x) const;

 private:
  void check_ring(const RadicalPoly& o) const;
  VPoly a_, b_;
  Rational two_pq_;
};

}  // namespace kraw

#endif  // KRAW_RADICAL_HPP
