/* Copyright (C) 2026 tnc contributors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "tnc/toricnorm.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace tnc;

RationalPolytope cube() {
  std::vector<Vec> pts;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 1; ++c) pts.push_back(Vec{Rational(a), Rational(b), Rational(c)});
  return RationalPolytope::from_points(3, pts);
}

RationalPolytope interval() {
  return RationalPolytope::from_points(1, {Vec{Rational(0)}, Vec{Rational(1)}});
}

void lattice_points_parallel(benchmark::State& state) {
  auto p = cube();
  long m = state.range(0);
  for (auto _ : state) {
    auto pts = p.lattice_points(m);
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(lattice_points_parallel)->Arg(8)->Arg(16)->Arg(24);

void lattice_points_serial(benchmark::State& state) {
  auto p = cube();
  long m = state.range(0);
  for (auto _ : state) {
    auto pts = reference::lattice_points(p, m);
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(lattice_points_serial)->Arg(8)->Arg(16)->Arg(24);

std::vector<std::pair<Vec, Rational>> parabola_grid(long grid) {
  std::vector<std::pair<Vec, Rational>> samples;
  for (long k = 0; k <= grid; ++k) {
    Rational a(k, grid);
    samples.emplace_back(Vec{a}, a * (1 - a));
  }
  return samples;
}

void envelope_parallel(benchmark::State& state) {
  auto samples = parabola_grid(state.range(0));
  for (auto _ : state) {
    auto env = concave_envelope(samples);
    benchmark::DoNotOptimize(env);
  }
}
BENCHMARK(envelope_parallel)->Arg(32)->Arg(64)->Arg(128);

void envelope_serial(benchmark::State& state) {
  auto samples = parabola_grid(state.range(0));
  for (auto _ : state) {
    auto env = reference::concave_envelope(samples);
    benchmark::DoNotOptimize(env);
  }
}
BENCHMARK(envelope_serial)->Arg(32)->Arg(64)->Arg(128);

ToricHomNorm capped_ramp() {
  auto p = interval();
  return divisorial_norm(p, {AffinePiece{Vec{Rational(1)}, Rational(0)},
                             AffinePiece{Vec{Rational(0)}, Rational(1, 3)}});
}

void level_values_parallel(benchmark::State& state) {
  auto chi = capped_ramp();
  long m = state.range(0);
  auto pts = chi.polytope().lattice_points(m);
  for (auto _ : state) {
    auto vals = level_values(chi, m, pts);
    benchmark::DoNotOptimize(vals);
  }
}
BENCHMARK(level_values_parallel)->Arg(256)->Arg(1024)->Arg(4096);

void level_values_serial(benchmark::State& state) {
  auto chi = capped_ramp();
  long m = state.range(0);
  auto pts = chi.polytope().lattice_points(m);
  for (auto _ : state) {
    auto vals = reference::level_values(chi, m, pts);
    benchmark::DoNotOptimize(vals);
  }
}
BENCHMARK(level_values_serial)->Arg(256)->Arg(1024)->Arg(4096);

void power_sum_parallel(benchmark::State& state) {
  std::mt19937_64 gen(5);
  std::vector<Rational> spec;
  for (long i = 0; i < state.range(0); ++i)
    spec.push_back(Rational(static_cast<long>(gen() % 41) - 20, 1 + static_cast<long>(gen() % 7)));
  for (auto _ : state) {
    auto s = sum_abs_pow(spec, 3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(power_sum_parallel)->Arg(1000)->Arg(10000)->Arg(100000);

void power_sum_serial(benchmark::State& state) {
  std::mt19937_64 gen(5);
  std::vector<Rational> spec;
  for (long i = 0; i < state.range(0); ++i)
    spec.push_back(Rational(static_cast<long>(gen() % 41) - 20, 1 + static_cast<long>(gen() % 7)));
  for (auto _ : state) {
    auto s = reference::sum_abs_pow(spec, 3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(power_sum_serial)->Arg(1000)->Arg(10000)->Arg(100000);

void superadditivity_scan(benchmark::State& state) {
  auto chi = capped_ramp();
  // Table construction runs the parallel scan; the reference call below
  // repeats it serially on the same data.
  auto table = tabulate(chi, 1, state.range(0));
  for (auto _ : state) {
    bool ok = reference::superadditive(table);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(superadditivity_scan)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
