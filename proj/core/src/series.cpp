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

#include "kraw/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace kraw {

AsymptoticSeries::AsymptoticSeries(int truncation_order, Rational two_pq)
    : trunc_(truncation_order), two_pq_(std::move(two_pq)) {
  if (two_pq_ <= 0) throw std::invalid_argument("two_pq must be positive");
}

int AsymptoticSeries::min_order() const { return t_.empty() ? trunc_ : t_.begin()->first; }

RadicalPoly AsymptoticSeries::coeff(int e) const {
  auto it = t_.find(e);
  if (it != t_.end()) return it->second;
  return RadicalPoly(two_pq_, "v");
}

void AsymptoticSeries::add_term(int e, const RadicalPoly& c) {
  if (e >= trunc_ || c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void AsymptoticSeries::check_ring(const AsymptoticSeries& o) const {
  if (two_pq_ != o.two_pq_) throw std::logic_error("AsymptoticSeries ring mismatch");
}

AsymptoticSeries AsymptoticSeries::operator-() const {
  AsymptoticSeries out(trunc_, two_pq_);
  for (const auto& [e, c] : t_) out.t_.emplace(e, -c);
  return out;
}

AsymptoticSeries& AsymptoticSeries::operator+=(const AsymptoticSeries& o) {
  check_ring(o);
  trunc_ = std::min(trunc_, o.trunc_);
  truncate_to(trunc_);
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

AsymptoticSeries& AsymptoticSeries::operator-=(const AsymptoticSeries& o) {
  check_ring(o);
  trunc_ = std::min(trunc_, o.trunc_);
  truncate_to(trunc_);
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

AsymptoticSeries operator*(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  a.check_ring(b);
  long t = std::min<long>(static_cast<long>(a.trunc_) + b.min_order(),
                          static_cast<long>(b.trunc_) + a.min_order());
  t = std::min<long>(t, AsymptoticSeries::kExactOrder);
  AsymptoticSeries out(static_cast<int>(t), a.two_pq_);
  for (const auto& [ea, ca] : a.t_) {
    if (ea + b.min_order() >= out.trunc_) continue;
    for (const auto& [eb, cb] : b.t_) {
      if (ea + eb >= out.trunc_) break;
      out.add_term(ea + eb, ca * cb);
    }
  }
  return out;
}

AsymptoticSeries operator/(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  return divide_to(a, b, AsymptoticSeries::kExactOrder);
}

AsymptoticSeries divide_to(const AsymptoticSeries& a, const AsymptoticSeries& b, int T) {
  a.check_ring(b);
  if (b.is_zero()) throw std::domain_error("series division by zero series");
  const int ob = b.min_order();
  const RadicalPoly& lead = b.t_.begin()->second;
  if (!lead.is_constant()) {
    throw std::domain_error("series division needs a constant leading coefficient");
  }
  RadicalPoly lead_inv = lead.inverse_constant();

  const int oa = a.min_order();
  long tq = std::min<long>(static_cast<long>(a.trunc_) - ob,
                           static_cast<long>(b.trunc_) - 2L * ob + oa);
  tq = std::min<long>(tq, T);
  AsymptoticSeries q(static_cast<int>(tq), a.two_pq_);
  if (a.is_zero()) return q;

  // Solve A = B * Q order by order: Q_e = lead^{-1} (A_{e+ob} - sum B_d Q_{e+ob-d}).
  for (int e = oa - ob; e < q.trunc_; ++e) {
    RadicalPoly acc = a.coeff(e + ob);
    for (const auto& [d, cb] : b.t_) {
      if (d == ob) continue;
      int qe = e + ob - d;  // strictly below e since d > ob
      if (qe < oa - ob) continue;
      auto it = q.t_.find(qe);
      if (it != q.t_.end()) acc -= cb * it->second;
    }
    RadicalPoly qe_coeff = lead_inv * acc;
    if (!qe_coeff.is_zero()) q.t_.emplace(e, qe_coeff);
  }
  return q;
}

AsymptoticSeries& AsymptoticSeries::operator*=(const RadicalPoly& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [e, v] : t_) v *= c;
  for (auto it = t_.begin(); it != t_.end();) {
    it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }
  return *this;
}

AsymptoticSeries& AsymptoticSeries::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [e, v] : t_) v *= c;
  return *this;
}

AsymptoticSeries& AsymptoticSeries::shift(int k) {
  trunc_ = std::min<long>(static_cast<long>(trunc_) + k, kExactOrder);
  std::map<int, RadicalPoly> shifted;
  for (auto& [e, c] : t_) shifted.emplace(e + k, std::move(c));
  t_ = std::move(shifted);
  return *this;
}

AsymptoticSeries& AsymptoticSeries::truncate_to(int T) {
  trunc_ = std::min(trunc_, T);
  t_.erase(t_.lower_bound(trunc_), t_.end());
  return *this;
}

bool AsymptoticSeries::only_even_powers() const {
  for (const auto& [e, c] : t_) {
    if (e % 2 != 0) return false;
  }
  return true;
}

bool AsymptoticSeries::w_free() const {
  for (const auto& [e, c] : t_) {
    if (!c.is_rational()) return false;
  }
  return true;
}

}  // namespace kraw
