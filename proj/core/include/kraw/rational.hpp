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

#ifndef KRAW_RATIONAL_HPP
#define KRAW_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kraw {

/// Arbitrary-precision integer, backed by GMP.
using Integer = mpz_class;

/// Exact rational scalar, always in lowest terms with positive denominator
/// (mpq_class keeps values canonical through arithmetic).
using Rational = mpq_class;

/// Parses "a/b" or "a" exactly (base 10). No binary-float round trip.
inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
  r.canonicalize();
  if (r.get_den() <= 0) {
    throw std::invalid_argument("rational with nonpositive denominator: '" + s + "'");
  }
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return z.get_si();
}

/// Exact integral power with negative exponents allowed (q must be nonzero then).
inline Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  bool neg = e < 0;
  unsigned long a = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), a);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), a);
  out.canonicalize();
  if (neg) {
    if (out == 0) throw std::domain_error("negative power of zero");
    out = 1 / out;
  }
  return out;
}

}  // namespace kraw

#endif  // KRAW_RATIONAL_HPP
