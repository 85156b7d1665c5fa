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

#include "kraw/radical.hpp"

#include <stdexcept>

namespace kraw {

RadicalPoly::RadicalPoly(Rational two_pq, std::string var)
    : a_(var), b_(var), two_pq_(std::move(two_pq)) {
  if (two_pq_ <= 0) throw std::invalid_argument("two_pq must be positive");
}

RadicalPoly::RadicalPoly(VPoly a, VPoly b, Rational two_pq)
    : a_(std::move(a)), b_(std::move(b)), two_pq_(std::move(two_pq)) {
  if (two_pq_ <= 0) throw std::invalid_argument("two_pq must be positive");
}

RadicalPoly RadicalPoly::rational_part(const Rational& c, const Rational& two_pq) {
  return RadicalPoly(VPoly::constant(c), VPoly(), two_pq);
}

RadicalPoly RadicalPoly::w_power(const Rational& c, long k, const Rational& two_pq) {
  RadicalPoly out = rational_part(c, two_pq);
  out.mul_w_power(k);
  return out;
}

void RadicalPoly::check_ring(const RadicalPoly& o) const {
  // A zero element carries no ring information and is compatible with any.
  if (is_zero() || o.is_zero()) return;
  if (two_pq_ != o.two_pq_) throw std::logic_error("RadicalPoly ring mismatch (different two_pq)");
}

RadicalPoly RadicalPoly::operator-() const { return RadicalPoly(-a_, -b_, two_pq_); }

RadicalPoly& RadicalPoly::operator+=(const RadicalPoly& o) {
  check_ring(o);
  if (two_pq_ == 0) two_pq_ = o.two_pq_;
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

RadicalPoly& RadicalPoly::operator-=(const RadicalPoly& o) {
  check_ring(o);
  if (two_pq_ == 0) two_pq_ = o.two_pq_;
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

RadicalPoly& RadicalPoly::operator*=(const RadicalPoly& o) {
  check_ring(o);
  if (two_pq_ == 0) two_pq_ = o.two_pq_;
  // (a1 + b1 w)(a2 + b2 w) = a1 a2 + two_pq b1 b2 + (a1 b2 + b1 a2) w
  VPoly na = a_ * o.a_ + (b_ * o.b_) * two_pq_;
  VPoly nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

RadicalPoly& RadicalPoly::operator*=(const Rational& s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

RadicalPoly& RadicalPoly::mul_w_power(long k) {
  if (k == 0 || is_zero()) return *this;
  long half = (k >= 0) ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
  bool odd = (k % 2) != 0;
  Rational scale = pow_rational(two_pq_, half);
  a_ *= scale;
  b_ *= scale;
  if (odd) {
    // multiply once more by w: (a + bw) w = two_pq*b + a*w
    VPoly na = b_ * two_pq_;
    VPoly nb = a_;
    a_ = std::move(na);
    b_ = std::move(nb);
  }
  return *this;
}

RadicalPoly RadicalPoly::inverse_constant() const {
  if (!is_constant()) throw std::domain_error("inverse of non-constant RadicalPoly");
  Rational a = a_.coeff(0), b = b_.coeff(0);
  Rational norm = a * a - two_pq_ * b * b;
  if (norm == 0) throw std::domain_error("non-invertible RadicalPoly (zero norm)");
  return RadicalPoly(VPoly::constant(a / norm), VPoly::constant(-b / norm), two_pq_);
}

PReal RadicalPoly::eval(const PReal& x) const {
  PReal w = sqrt_rational(two_pq_, x.precision());
  return a_.eval(x) + b_.eval(x) * w;
}

}  // namespace kraw
