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

#include "kraw/edgeworth.hpp"

#include <stdexcept>

#include "kraw/orthopoly.hpp"

namespace kraw {

CumulantTable bernoulli_cumulants(const Rational& p, unsigned m) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("bernoulli_cumulants: p outside (0,1)");
  if (m < 2) throw std::invalid_argument("bernoulli_cumulants: need m >= 2");
  CumulantTable table;
  table.p = p;
  table.entries.resize(m);
  // kappa_n = m_n - sum_{j<n} C(n-1,j-1) kappa_j m_{n-j}; every raw moment is p.
  for (unsigned n = 1; n <= m; ++n) {
    Rational acc = p;
    for (unsigned j = 1; j < n; ++j) {
      acc -= Rational(binomial(n - 1, static_cast<long>(j - 1))) * table.entries[j - 1] * p;
    }
    table.entries[n - 1] = acc;
  }
  return table;
}

EdgeworthTable::EdgeworthTable(Rational p, unsigned max_nu) : p_(std::move(p)) {
  if (p_ <= 0 || p_ >= 1) throw std::invalid_argument("EdgeworthTable: p outside (0,1)");
  Rational q = Rational(1) - p_;
  two_pq_ = Rational(2) * p_ * q;
  CumulantTable cumulants = bernoulli_cumulants(p_, max_nu + 2);

  terms_.reserve(max_nu + 1);
  q_cache_.reserve(max_nu + 1);
  for (unsigned nu = 0; nu <= max_nu; ++nu) {
    EdgeworthTerm term;
    term.nu = nu;
    for (const auto& part : weighted_partitions(nu)) {
      EdgeworthSummand summand;
      summand.partition = part;
      summand.s = part.s;
      summand.hermite_index = nu + 2 * part.s;
      // b = (2pq)^(-(nu+2s)/2) prod_m (1/k_m!) (gamma_{m+2}/(m+2)!)^{k_m};
      // the half-power is carried by w.
      Rational r(1);
      for (unsigned m = 1; m <= nu; ++m) {
        unsigned km = part.k[m - 1];
        if (km == 0) continue;
        Rational base = cumulants.gamma(m + 2) / Rational(factorial(m + 2));
        r *= pow_rational(base, km) / Rational(factorial(km));
      }
      summand.b = RadicalPoly::w_power(r, -static_cast<long>(nu + 2 * part.s), two_pq_);
      term.summands.push_back(std::move(summand));
    }
    // q~_nu(x) = sum b_{nu,s} H_{nu+2s}(x)
    RadicalPoly qpoly(two_pq_, "x");
    for (const auto& summand : term.summands) {
      VPoly h = hermite(summand.hermite_index);
      qpoly += RadicalPoly(summand.b.a().coeff(0) * h, summand.b.b().coeff(0) * h, two_pq_);
    }
    terms_.push_back(std::move(term));
    q_cache_.push_back(std::move(qpoly));
  }
}

RadicalPoly EdgeworthTable::g_tilde(unsigned nu, unsigned r) const {
  const EdgeworthTerm& term = terms_.at(nu);
  RadicalPoly out(two_pq_, "x");
  for (const auto& summand : term.summands) {
    VPoly h = hermite(summand.hermite_index + r);
    out += RadicalPoly(summand.b.a().coeff(0) * h, summand.b.b().coeff(0) * h, two_pq_);
  }
  if (r % 2 != 0) out *= Rational(-1);
  return out;
}

RadicalPoly q_tilde(unsigned nu, const Rational& p) { return EdgeworthTable(p, nu).q_tilde(nu); }

RadicalPoly g_tilde(unsigned nu, unsigned r, const Rational& p) {
  return EdgeworthTable(p, nu).g_tilde(nu, r);
}

namespace {
PReal gaussian_prefactor(const EdgeworthTable& table, const PReal& x) {
  const long prec = x.precision();
  PReal sigma = sqrt_rational(table.p() * table.q(), prec);
  return exp(-(x * x)) / (sqrt(PReal(2, prec) * pi(prec)) * sigma);
}
}  // namespace

PReal petrov_density(const EdgeworthTable& table, unsigned M, long N, const PReal& x) {
  if (table.max_nu() < M) throw std::invalid_argument("EdgeworthTable too shallow for M");
  const long prec = x.precision();
  PReal rt_n_inv = PReal(1, prec) / sqrt(PReal(N, prec));
  PReal acc(prec);
  PReal scale(1, prec);
  for (unsigned nu = 0; nu <= M; ++nu) {
    acc += table.q_tilde(nu).eval(x) * scale;
    scale *= rt_n_inv;
  }
  return gaussian_prefactor(table, x) * acc;
}

PReal petrov_density_derivative(const EdgeworthTable& table, unsigned M, long N, unsigned r,
                                const PReal& x) {
  if (table.max_nu() < M) throw std::invalid_argument("EdgeworthTable too shallow for M");
  const long prec = x.precision();
  PReal rt_n_inv = PReal(1, prec) / sqrt(PReal(N, prec));
  PReal acc(prec);
  PReal scale(1, prec);
  for (unsigned nu = 0; nu <= M; ++nu) {
    acc += table.g_tilde(nu, r).eval(x) * scale;
    scale *= rt_n_inv;
  }
  return gaussian_prefactor(table, x) * acc;
}

}  // namespace kraw
