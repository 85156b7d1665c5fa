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

#include "kraw/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace kraw {

namespace {
const Rational kZero(0);
}

VPoly::VPoly(std::vector<Rational> coeffs, std::string var)
    : c_(std::move(coeffs)), var_(std::move(var)) {
  trim();
}

VPoly VPoly::constant(const Rational& c, std::string var) {
  return VPoly({c}, std::move(var));
}

VPoly VPoly::monomial(const Rational& c, unsigned k, std::string var) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return VPoly(std::move(v), std::move(var));
}

void VPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& VPoly::coeff(unsigned k) const {
  return k < c_.size() ? c_[k] : kZero;
}

void VPoly::set_coeff(unsigned k, const Rational& v) {
  if (k >= c_.size()) {
    if (v == 0) return;
    c_.resize(k + 1, Rational(0));
  }
  c_[k] = v;
  trim();
}

const Rational& VPoly::leading() const {
  if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return c_.back();
}

VPoly VPoly::operator-() const {
  VPoly out(*this);
  for (auto& c : out.c_) c = -c;
  return out;
}

VPoly& VPoly::operator+=(const VPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

VPoly& VPoly::operator-=(const VPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

VPoly& VPoly::operator*=(const VPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  c_ = std::move(out);
  trim();
  return *this;
}

VPoly& VPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

VPoly& VPoly::operator/=(const Rational& s) {
  if (s == 0) throw std::domain_error("VPoly division by zero scalar");
  for (auto& c : c_) c /= s;
  return *this;
}

Rational VPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

PReal VPoly::eval(const PReal& x) const {
  PReal acc(x.precision());
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + PReal(c_[i], x.precision());
  return acc;
}

VPoly VPoly::derivative() const {
  if (c_.size() <= 1) return VPoly(var_);
  std::vector<Rational> out(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return VPoly(std::move(out), var_);
}

VPoly VPoly::compose_linear(const Rational& a, const Rational& b) const {
  // Horner in (a*x + b).
  VPoly lin({b, a}, var_);
  VPoly acc(var_);
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= lin;
    acc += VPoly::constant(c_[i], var_);
  }
  return acc;
}

VPoly VPoly::renamed(std::string var) const {
  VPoly out(*this);
  out.var_ = std::move(var);
  return out;
}

std::string VPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational a = c > 0 ? c : Rational(-c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << var_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace kraw
