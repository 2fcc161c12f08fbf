#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isospec/assembly.hpp"
#include "isospec/types.hpp"

namespace isospec::spectral {

struct BlockSpectrum {
  algebra::TorusWeight weight;
  std::vector<double> eigenvalues;  // ascending
  int filtered_rank = 0;
};

struct ComparisonVerdict {
  double max_gap = 0.0;
  bool ok = false;
};

// Per-weight sorted generalized eigenvalue blocks for one metric, plus the
// metadata needed to pair two reports.
struct SpectrumReport {
  std::string surface;
  int m = 0;
  int N = 0;
  QuadratureOrders orders;
  std::uint64_t seed = 0;
  std::vector<BlockSpectrum> blocks;  // sorted by weight
  std::optional<ComparisonVerdict> comparison;

  std::vector<double> pooled_eigenvalues() const;  // all blocks merged, ascending
};

// Assembles, solves and collects every weight block.
SpectrumReport make_spectrum_report(const MonomialBasis& basis, const QuadratureRule& quad,
                                    const geometry::AdmissibleForm& form, std::uint64_t seed);

// Elementwise gaps of sorted eigenvalues per weight; ok iff the maximum gap
// is <= tol.  Throws MetadataMismatch unless basis and quadrature metadata
// agree.  Mismatched block sizes yield an infinite gap.
ComparisonVerdict compare_spectra(const SpectrumReport& a, const SpectrumReport& b, double tol);

// JSON per the fixed schema:
// {surface, m, N, quadrature:{orders, K}, seed, blocks:[{weight, eigenvalues}],
//  comparison:{max_gap, ok}}  (comparison only when present).
std::string to_json(const SpectrumReport& report);

// CSV, one row per eigenvalue: weight_m1, weight_m2, index, value_A, value_B,
// gap.  Without `other` the B column and the gap are left empty.
std::string to_csv(const SpectrumReport& report, const SpectrumReport* other = nullptr);

// Deterministic shortest-faithful double formatting used by all writers.
std::string format_double(double v);

}  // namespace isospec::spectral
