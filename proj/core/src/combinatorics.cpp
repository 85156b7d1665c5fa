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

#include "kraw/combinatorics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace kraw {

Integer binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return Integer(0);
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational falling_factorial(const Rational& y, unsigned k) {
  Rational out(1);
  Rational t(y);
  for (unsigned i = 0; i < k; ++i) {
    out *= t;
    t -= 1;
  }
  return out;
}

Integer falling_factorial(long y, unsigned k) {
  Integer out(1);
  for (unsigned i = 0; i < k; ++i) out *= Integer(y - static_cast<long>(i));
  return out;
}

Integer double_factorial(long k) {
  if (k < -1) throw std::invalid_argument("double factorial needs k >= -1");
  if (k <= 0) return Integer(1);  // (-1)!! = 0!! = 1
  Integer out(1);
  for (long t = k; t > 1; t -= 2) out *= Integer(t);
  return out;
}

namespace {
// B_0..B_max via the defining recurrence sum_{j<=m} C(m+1,j) B_j = 0.
std::vector<Rational> bernoulli_table(unsigned max_k) {
  std::vector<Rational> b(max_k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= max_k; ++m) {
    Rational acc(0);
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -acc / Rational(binomial(m + 1, m));
  }
  return b;
}
}  // namespace

Rational bernoulli_number(unsigned k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("bernoulli_number needs even k >= 2");
  static std::mutex mu;
  static std::vector<Rational> table;
  std::lock_guard<std::mutex> lock(mu);
  if (table.size() <= k) table = bernoulli_table(k + 16);
  return table[k];
}

namespace {
void enumerate(unsigned nu, unsigned m, unsigned remaining, WeightedPartition& cur,
               std::vector<WeightedPartition>& out) {
  if (m > nu) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  // k_m can take 0 .. remaining/m
  for (unsigned km = 0; km * m <= remaining; ++km) {
    cur.k[m - 1] = km;
    cur.s += km;
    enumerate(nu, m + 1, remaining - km * m, cur, out);
    cur.s -= km;
    cur.k[m - 1] = 0;
  }
}
}  // namespace

std::vector<WeightedPartition> weighted_partitions(unsigned nu) {
  std::vector<WeightedPartition> out;
  WeightedPartition cur;
  cur.k.assign(nu, 0);
  cur.s = 0;
  if (nu == 0) {
    out.push_back(cur);
    return out;
  }
  enumerate(nu, 1, nu, cur, out);
  return out;
}

}  // namespace kraw
