#include <benchmark/benchmark.h>

#include "isospec/assembly.hpp"
#include "isospec/report.hpp"

using namespace isospec;

static void BM_AssembleS5(benchmark::State& state) {
  const int radial = static_cast<int>(state.range(0));
  const auto basis = spectral::MonomialBasis::build(2, 3);
  const auto quad = spectral::QuadratureRule::build(2, geometry::Surface::sphere(),
                                                    {radial, 9});
  const auto form = geometry::AdmissibleForm::sym(algebra::pair_c().first);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::assemble_blocks(basis, quad, form));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(quad.orbit_nodes().size()));
}
BENCHMARK(BM_AssembleS5)->Arg(3)->Arg(8);

static void BM_AssembleS7(benchmark::State& state) {
  const auto basis = spectral::MonomialBasis::build(3, 2);
  const auto quad = spectral::QuadratureRule::build(3, geometry::Surface::sphere(), {4, 7});
  const auto form = geometry::AdmissibleForm::su(algebra::family_j(0.5));
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::assemble_blocks(basis, quad, form));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(quad.orbit_nodes().size()));
}
BENCHMARK(BM_AssembleS7);

static void BM_SolveAllBlocks(benchmark::State& state) {
  const auto basis = spectral::MonomialBasis::build(2, 3);
  const auto quad = spectral::QuadratureRule::build(2, geometry::Surface::sphere(), {6, 9});
  const auto form = geometry::AdmissibleForm::sym(algebra::pair_c().first);
  const auto blocks = spectral::assemble_blocks(basis, quad, form);
  for (auto _ : state) {
    auto work = blocks;
    for (auto& blk : work) benchmark::DoNotOptimize(spectral::solve_block(blk));
  }
}
BENCHMARK(BM_SolveAllBlocks);
