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

#ifndef KRAW_POLY_HPP
#define KRAW_POLY_HPP

#include <string>
#include <vector>

#include "kraw/preal.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// Univariate polynomial over Rational, dense by degree. Trailing zero
/// coefficients are trimmed; the zero polynomial has degree() == -1.
/// The variable name is documentation only and does not affect arithmetic.
class VPoly {
 public:
  VPoly() = default;
  explicit VPoly(std::string var) : var_(std::move(var)) {}
  VPoly(std::vector<Rational> coeffs, std::string var = "x");

  static VPoly constant(const Rational& c, std::string var = "x");
  /// c * x^k
  static VPoly monomial(const Rational& c, unsigned k, std::string var = "x");

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::string& var() const { return var_; }

  /// Coefficient of x^k (zero outside the stored range).
  const Rational& coeff(unsigned k) const;
  void set_coeff(unsigned k, const Rational& v);
  const Rational& leading() const;

  VPoly operator-() const;
  VPoly& operator+=(const VPoly& o);
  VPoly& operator-=(const VPoly& o);
  VPoly& operator*=(const VPoly& o);
  VPoly& operator*=(const Rational& s);
  VPoly& operator/=(const Rational& s);

  friend VPoly operator+(VPoly a, const VPoly& b) { return a += b; }
  friend VPoly operator-(VPoly a, const VPoly& b) { return a -= b; }
  friend VPoly operator*(VPoly a, const VPoly& b) { return a *= b; }
  friend VPoly operator*(VPoly a, const Rational& s) { return a *= s; }
  friend VPoly operator*(const Rational& s, VPoly a) { return a *= s; }
  friend VPoly operator/(VPoly a, const Rational& s) { return a /= s; }

  friend bool operator==(const VPoly& a, const VPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const VPoly& a, const VPoly& b) { return a.c_ != b.c_; }

  Rational eval(const Rational& x) const;
  PReal eval(const PReal& x) const;

  VPoly derivative() const;
  /// P(a*x + b), exact.
  VPoly compose_linear(const Rational& a, const Rational& b) const;

  /// Deterministic rendering, degree descending, e.g. "1/6*v^3 - 1/2*v^2 + 2".
  std::string str() const;

  /// Same coefficients under a different variable name.
  VPoly renamed(std::string var) const;

 private:
  void trim();
  std::vector<Rational> c_;
  std::string var_ = "x";
};

}  // namespace kraw

#endif  // KRAW_POLY_HPP
