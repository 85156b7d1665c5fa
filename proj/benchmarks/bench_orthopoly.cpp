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

#include "kraw/orthopoly.hpp"

namespace {

void BM_krawtchouk_exact(benchmark::State& state) {
  const long N = state.range(0);
  kraw::KrawtchoukParams params(kraw::Rational(3, 10), N, 4);
  kraw::Rational x = kraw::Rational(N) * kraw::Rational(3, 10) + 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kraw::krawtchouk_hypergeometric(params, x));
  }
}
BENCHMARK(BM_krawtchouk_exact)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 22);

void BM_weight_rho_sweep(benchmark::State& state) {
  const long N = state.range(0);
  kraw::Rational p(3, 10);
  long center = static_cast<long>(N * 0.3);
  for (auto _ : state) {
    double acc = 0;
    kraw::for_each_lattice_weight(N, p, center - 50, center + 50,
                                  [&](long, const kraw::Rational& rho) {
                                    acc += rho.get_d();
                                  });
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_weight_rho_sweep)->Arg(1 << 12)->Arg(1 << 16);

void BM_orthogonality_row(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kraw::orthogonality_sum(20, kraw::Rational(1, 3), 7, 7));
  }
}
BENCHMARK(BM_orthogonality_row);

}  // namespace
