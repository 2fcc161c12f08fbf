#include <benchmark/benchmark.h>

#include "isospec/algebra.hpp"
#include "isospec/rng.hpp"

using namespace isospec;

static void BM_CharPolyAt(benchmark::State& state) {
  const auto pair = algebra::family_j(0.4);
  double s = 0.3, u = -0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(algebra::char_poly_at(pair, s, u));
    s += 1e-9;  // defeat caching of identical inputs
  }
}
BENCHMARK(BM_CharPolyAt);

static void BM_CheckIsospectral(benchmark::State& state) {
  const auto a = algebra::family_j(0.0);
  const auto b = algebra::family_j(0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(algebra::check_isospectral(a, b, 16, 1e-12));
}
BENCHMARK(BM_CheckIsospectral);

static void BM_CommutantDimension(benchmark::State& state) {
  const auto pair = algebra::family_j(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(algebra::commutant_dimension(pair));
}
BENCHMARK(BM_CommutantDimension);

static void BM_ConjugationWitness(benchmark::State& state) {
  RandomSource rng(5);
  const MatrixXcd X = algebra::family_j(0.0).J2;
  const MatrixXcd U = rng.special_unitary(3);
  const MatrixXcd Xp = U * X * U.adjoint();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        algebra::conjugation_witness(X, Xp, algebra::ConjugationKind::Su));
}
BENCHMARK(BM_ConjugationWitness);

static void BM_Su2Lift(benchmark::State& state) {
  RandomSource rng(6);
  const Matrix3d E = rng.rotation3();
  for (auto _ : state) benchmark::DoNotOptimize(algebra::su2_lift(E));
}
BENCHMARK(BM_Su2Lift);
