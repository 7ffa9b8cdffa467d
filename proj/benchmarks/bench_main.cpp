#include <benchmark/benchmark.h>

#include <random>

#include "seriesroot/annihilator.hpp"
#include "seriesroot/ext_scalar.hpp"
#include "seriesroot/jet.hpp"
#include "seriesroot/univar.hpp"

using namespace seriesroot;

namespace {

PolyMap<cplx> planar_quadratic() {
  PolyMap<cplx> F(2);
  Jet<cplx> fx(2, 4), fy(2, 4);
  fx.add_term({1, 0}, cplx(1.3, 0.2));
  fx.add_term({0, 2}, cplx(0.4, -0.1));
  fx.add_term({1, 1}, cplx(-0.2, 0.3));
  fy.add_term({0, 1}, cplx(0.5, -1.1));
  fy.add_term({2, 0}, cplx(0.7, 0.0));
  F.components.push_back(fx);
  F.components.push_back(fy);
  return F;
}

void BM_iterate_jets(benchmark::State& state) {
  PolyMap<cplx> F = planar_quadratic();
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto iters = iterate_jets(F, 4, N);
    benchmark::DoNotOptimize(iters);
  }
}
BENCHMARK(BM_iterate_jets)->Arg(10)->Arg(30);

void BM_minpoly(benchmark::State& state) {
  PolyMap<cplx> F = planar_quadratic();
  int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = minpoly_up_to_degree(F, d, 2 * 16 + 2);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_minpoly)->Arg(2)->Arg(3);

void BM_ext_mul(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ExtComplex> xs(1024);
  for (auto& x : xs)
    x = ExtComplex::from_parts(cplx(1.0 + 0.5 * (u(rng) + 1.0), u(rng)),
                               static_cast<std::int64_t>(1e6 * u(rng)));
  for (auto _ : state) {
    ExtComplex acc(1.0);
    for (const auto& x : xs) acc = acc * x;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ext_mul);

void BM_shifted_table(benchmark::State& state) {
  DensePoly f;
  f.coeffs = {cplx(0, 0), cplx(1, 0), cplx(1, 0)};  // z + z^2
  for (auto _ : state) {
    auto T = shifted_iterate_table(f, cplx(-1000.0, 0.0), 3, 24);
    benchmark::DoNotOptimize(T);
  }
}
BENCHMARK(BM_shifted_table);

void BM_orthogonal_solver(benchmark::State& state) {
  std::vector<std::vector<ExtComplex>> rows(4);
  for (int j = 0; j <= 3; ++j) {
    rows[j].resize(13);
    for (int i = 0; i <= 12; ++i) rows[j][i] = pow_n(ExtComplex(double(j + 1)), i);
  }
  for (auto _ : state) {
    auto sol = orthogonal_solve_rows(rows, 1e-9);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_orthogonal_solver);

}  // namespace

BENCHMARK_MAIN();
