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

#include "kraw/preal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kraw {

namespace {
long checked_prec(long bits) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  return bits;
}
}  // namespace

PReal::PReal(long precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_zero(v_, 1);
}

PReal::PReal(const Rational& q, long precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

PReal::PReal(const Integer& z, long precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

PReal::PReal(long v, long precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

PReal::PReal(double v, long precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

PReal::PReal(const PReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

PReal::PReal(PReal&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

PReal& PReal::operator=(const PReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

PReal& PReal::operator=(PReal&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

PReal::~PReal() { mpfr_clear(v_); }

namespace {
// Widens *this to max(precisions) before an in-place op so no bits are lost.
void widen_for(mpfr_t v, mpfr_srcptr o) {
  mpfr_prec_t p = std::max(mpfr_get_prec(v), mpfr_get_prec(o));
  if (mpfr_get_prec(v) != p) {
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    mpfr_set(tmp, v, MPFR_RNDN);
    mpfr_swap(v, tmp);
    mpfr_clear(tmp);
  }
}
}  // namespace

PReal PReal::operator-() const {
  PReal out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

PReal& PReal::operator+=(const PReal& o) {
  widen_for(v_, o.v_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

PReal& PReal::operator-=(const PReal& o) {
  widen_for(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

PReal& PReal::operator*=(const PReal& o) {
  widen_for(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

PReal& PReal::operator/=(const PReal& o) {
  if (mpfr_zero_p(o.v_)) throw std::domain_error("PReal division by zero");
  widen_for(v_, o.v_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

std::string PReal::str() const {
  int digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 1;
  return str(digits);
}

std::string PReal::str(int digits) const {
  if (digits < 2) digits = 2;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

PReal abs(const PReal& a) {
  PReal out(a);
  mpfr_abs(out.v_, out.v_, MPFR_RNDN);
  return out;
}

PReal sqrt(const PReal& a) {
  if (a.sign() < 0) throw std::domain_error("sqrt of negative PReal");
  PReal out(a);
  mpfr_sqrt(out.v_, out.v_, MPFR_RNDN);
  return out;
}

PReal exp(const PReal& a) {
  PReal out(a);
  mpfr_exp(out.v_, out.v_, MPFR_RNDN);
  return out;
}

PReal log(const PReal& a) {
  if (a.sign() <= 0) throw std::domain_error("log of nonpositive PReal");
  PReal out(a);
  mpfr_log(out.v_, out.v_, MPFR_RNDN);
  return out;
}

PReal pow_si(const PReal& a, long e) {
  PReal out(a);
  mpfr_pow_si(out.v_, a.v_, e, MPFR_RNDN);
  return out;
}

PReal pi(long precision_bits) {
  PReal out(precision_bits);
  mpfr_const_pi(out.raw(), MPFR_RNDN);
  return out;
}

PReal PReal::at_precision(long precision_bits) const {
  PReal out(checked_prec(precision_bits));
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

PReal sqrt_rational(const Rational& q, long precision_bits) {
  return sqrt(PReal(q, precision_bits));
}

}  // namespace kraw
