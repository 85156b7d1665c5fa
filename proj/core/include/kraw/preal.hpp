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

#ifndef KRAW_PREAL_HPP
#define KRAW_PREAL_HPP

#include <mpfr.h>

#include <string>

#include "kraw/rational.hpp"

namespace kraw {

/// Floating scalar with an explicit precision in bits (MPFR under the hood).
///
/// Value semantics throughout; binary operations evaluate at the wider of the
/// two operand precisions. Published quantities are expected to be stable
/// under precision doubling to 2^(-bits/2) relative; the test suites check
/// that, the type itself only carries the precision.
class PReal {
 public:
  static constexpr long kDefaultPrecision = 256;

  PReal() : PReal(kDefaultPrecision) {}
  explicit PReal(long precision_bits);
  PReal(const Rational& q, long precision_bits);
  PReal(const Integer& z, long precision_bits);
  PReal(long v, long precision_bits);
  PReal(int v, long precision_bits) : PReal(static_cast<long>(v), precision_bits) {}
  PReal(double v, long precision_bits);  // dyadic doubles convert exactly

  PReal(const PReal& o);
  PReal(PReal&& o) noexcept;
  PReal& operator=(const PReal& o);
  PReal& operator=(PReal&& o) noexcept;
  ~PReal();

  long precision() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  PReal operator-() const;
  PReal& operator+=(const PReal& o);
  PReal& operator-=(const PReal& o);
  PReal& operator*=(const PReal& o);
  PReal& operator/=(const PReal& o);

  friend PReal operator+(PReal a, const PReal& b) { return a += b; }
  friend PReal operator-(PReal a, const PReal& b) { return a -= b; }
  friend PReal operator*(PReal a, const PReal& b) { return a *= b; }
  friend PReal operator/(PReal a, const PReal& b) { return a /= b; }

  friend bool operator==(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const PReal& a, const PReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Deterministic decimal rendering; digit count derived from the precision.
  std::string str() const;
  std::string str(int digits) const;

  friend PReal abs(const PReal& a);
  friend PReal sqrt(const PReal& a);
  friend PReal exp(const PReal& a);
  friend PReal log(const PReal& a);
  friend PReal pow_si(const PReal& a, long e);

  /// Re-round to a different working precision.
  PReal at_precision(long precision_bits) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

PReal abs(const PReal& a);
PReal sqrt(const PReal& a);
PReal exp(const PReal& a);
PReal log(const PReal& a);
PReal pow_si(const PReal& a, long e);
PReal pi(long precision_bits);
PReal sqrt_rational(const Rational& q, long precision_bits);

}  // namespace kraw

#endif  // KRAW_PREAL_HPP
