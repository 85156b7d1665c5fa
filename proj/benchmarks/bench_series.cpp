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

#include <benchmark/benchmark.h>

#include "kraw/series.hpp"

namespace {

kraw::AsymptoticSeries unit_series(int depth, const kraw::Rational& two_pq) {
  kraw::AsymptoticSeries s(depth, two_pq);
  s.add_term(0, kraw::RadicalPoly::rational_part(kraw::Rational(1), two_pq));
  for (int e = 1; e < depth; ++e) {
    kraw::VPoly a = kraw::VPoly::monomial(kraw::Rational(e, e + 1), e % 4, "v");
    s.add_term(e, kraw::RadicalPoly(a, kraw::VPoly("v"), two_pq));
  }
  return s;
}

void BM_series_multiply(benchmark::State& state) {
  kraw::Rational two_pq(21, 50);
  auto a = unit_series(static_cast<int>(state.range(0)), two_pq);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * a);
  }
}
BENCHMARK(BM_series_multiply)->Arg(8)->Arg(16)->Arg(32);

void BM_series_divide(benchmark::State& state) {
  kraw::Rational two_pq(21, 50);
  auto a = unit_series(static_cast<int>(state.range(0)), two_pq);
  auto one = kraw::AsymptoticSeries(static_cast<int>(state.range(0)), two_pq);
  one.add_term(0, kraw::RadicalPoly::rational_part(kraw::Rational(1), two_pq));
  for (auto _ : state) {
    benchmark::DoNotOptimize(one / a);
  }
}
BENCHMARK(BM_series_divide)->Arg(8)->Arg(16)->Arg(32);

}  // namespace
