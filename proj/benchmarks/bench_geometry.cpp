#include <benchmark/benchmark.h>

#include "isospec/geometry.hpp"
#include "isospec/rng.hpp"
#include "isospec/verify.hpp"

using namespace isospec;

static void BM_EvalFormSu(benchmark::State& state) {
  RandomSource rng(11);
  const auto form = geometry::AdmissibleForm::su(algebra::family_j(0.4));
  const auto pt = spectral::random_surface_point(3, geometry::Surface::sphere(), rng);
  const VectorXd v = spectral::random_tangent(pt, geometry::Surface::sphere(), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::eval_form(form, geometry::TangentVector{pt, v}));
}
BENCHMARK(BM_EvalFormSu);

static void BM_EvalFormSym(benchmark::State& state) {
  RandomSource rng(12);
  const auto form = geometry::AdmissibleForm::sym(algebra::pair_c().first);
  const auto pt = spectral::random_surface_point(2, geometry::Surface::sphere(), rng);
  const VectorXd v = spectral::random_tangent(pt, geometry::Surface::sphere(), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::eval_form(form, geometry::TangentVector{pt, v}));
}
BENCHMARK(BM_EvalFormSym);

static void BM_TangentFrame(benchmark::State& state) {
  RandomSource rng(13);
  const auto pt = spectral::random_surface_point(3, geometry::Surface::sphere(), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::tangent_frame(pt, geometry::Surface::sphere()));
}
BENCHMARK(BM_TangentFrame);

static void BM_MetricGram(benchmark::State& state) {
  RandomSource rng(14);
  const auto form = geometry::AdmissibleForm::su(algebra::family_j(0.4));
  const auto pt = spectral::random_surface_point(3, geometry::Surface::sphere(), rng);
  const auto frame = geometry::tangent_frame(pt, geometry::Surface::sphere());
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::metric_gram(form, pt, frame));
}
BENCHMARK(BM_MetricGram);
