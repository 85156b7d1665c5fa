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

#include "kraw/edgeworth.hpp"
#include "kraw/expansion.hpp"

namespace {

void BM_edgeworth_table(benchmark::State& state) {
  const unsigned depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    kraw::EdgeworthTable table(kraw::Rational(3, 10), depth);
    benchmark::DoNotOptimize(table.q_tilde(depth));
  }
}
BENCHMARK(BM_edgeworth_table)->Arg(4)->Arg(8)->Arg(12);

void BM_petrov_density(benchmark::State& state) {
  kraw::EdgeworthTable table(kraw::Rational(3, 10), 4);
  kraw::PReal x(0.6, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kraw::petrov_density(table, 4, 1 << 16, x));
  }
}
BENCHMARK(BM_petrov_density);

void BM_symbolic_expansion(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kraw::symbolic_expansion(n, n / 2 + 1, kraw::Rational(3, 10)));
  }
}
BENCHMARK(BM_symbolic_expansion)->Arg(2)->Arg(4)->Arg(6);

}  // namespace
