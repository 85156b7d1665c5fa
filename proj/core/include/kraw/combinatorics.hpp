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

#ifndef KRAW_COMBINATORICS_HPP
#define KRAW_COMBINATORICS_HPP

#include <vector>

#include "kraw/rational.hpp"

namespace kraw {

/// Exact binomial coefficient; 0 when k < 0 or k > n.
Integer binomial(unsigned long n, long k);

Integer factorial(unsigned long n);

/// y(y-1)...(y-k+1); 1 for k = 0.
Rational falling_factorial(const Rational& y, unsigned k);
Integer falling_factorial(long y, unsigned k);

/// k!! with (-1)!! = 0!! = 1. Rejects k < -1.
Integer double_factorial(long k);

/// Exact Bernoulli number B_k for even k >= 2 (B_2 = 1/6 convention).
/// Odd k is rejected: only even orders enter the Stirling correction F_m.
Rational bernoulli_number(unsigned k);

/// One nonnegative solution of k_1 + 2 k_2 + ... + nu k_nu = nu,
/// with s = k_1 + ... + k_nu.
struct WeightedPartition {
  std::vector<unsigned> k;  // k[m-1] = k_m, length nu
  unsigned s = 0;
};

/// The complete solution set; for nu = 0 the single empty tuple (s = 0).
/// Deterministic ordering.
std::vector<WeightedPartition> weighted_partitions(unsigned nu);

}  // namespace kraw

#endif  // KRAW_COMBINATORICS_HPP
