#include "isospec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace isospec::spectral {

std::string format_double(double v) {
  // Shortest representation that round-trips, tried in increasing precision.
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

std::vector<double> SpectrumReport::pooled_eigenvalues() const {
  std::vector<double> all;
  for (const BlockSpectrum& b : blocks)
    all.insert(all.end(), b.eigenvalues.begin(), b.eigenvalues.end());
  std::sort(all.begin(), all.end());
  return all;
}

SpectrumReport make_spectrum_report(const MonomialBasis& basis, const QuadratureRule& quad,
                                    const geometry::AdmissibleForm& form, std::uint64_t seed) {
  SpectrumReport report;
  report.surface = quad.surface().name();
  report.m = basis.m;
  report.N = basis.N;
  report.orders = quad.orders();
  report.seed = seed;
  std::vector<WeightBlock> blocks = assemble_blocks(basis, quad, form);
  report.blocks.reserve(blocks.size());
  for (WeightBlock& blk : blocks) {
    BlockSpectrum bs;
    bs.weight = blk.weight;
    bs.eigenvalues = solve_block(blk);
    bs.filtered_rank = blk.filtered_rank;
    report.blocks.push_back(std::move(bs));
  }
  std::sort(report.blocks.begin(), report.blocks.end(),
            [](const BlockSpectrum& a, const BlockSpectrum& b) { return a.weight < b.weight; });
  return report;
}

ComparisonVerdict compare_spectra(const SpectrumReport& a, const SpectrumReport& b, double tol) {
  if (a.surface != b.surface || a.m != b.m || a.N != b.N || !(a.orders == b.orders))
    throw MetadataMismatch("compare_spectra: reports were built with different metadata");
  if (a.blocks.size() != b.blocks.size())
    throw MetadataMismatch("compare_spectra: block lists differ");
  double max_gap = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const BlockSpectrum& ba = a.blocks[i];
    const BlockSpectrum& bb = b.blocks[i];
    if (!(ba.weight == bb.weight))
      throw MetadataMismatch("compare_spectra: weight lists differ");
    if (ba.eigenvalues.size() != bb.eigenvalues.size()) {
      max_gap = std::numeric_limits<double>::infinity();
      continue;
    }
    for (std::size_t k = 0; k < ba.eigenvalues.size(); ++k)
      max_gap = std::max(max_gap, std::abs(ba.eigenvalues[k] - bb.eigenvalues[k]));
  }
  return ComparisonVerdict{max_gap, max_gap <= tol};
}

std::string to_json(const SpectrumReport& report) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"surface\": \"" << report.surface << "\",\n";
  os << "  \"m\": " << report.m << ",\n";
  os << "  \"N\": " << report.N << ",\n";
  os << "  \"quadrature\": {\"orders\": [" << report.orders.radial << "], \"K\": "
     << report.orders.angular << "},\n";
  os << "  \"seed\": " << report.seed << ",\n";
  os << "  \"blocks\": [\n";
  for (std::size_t i = 0; i < report.blocks.size(); ++i) {
    const BlockSpectrum& b = report.blocks[i];
    os << "    {\"weight\": [" << b.weight.m1 << ", " << b.weight.m2
       << "], \"eigenvalues\": [";
    for (std::size_t k = 0; k < b.eigenvalues.size(); ++k) {
      if (k) os << ", ";
      os << format_double(b.eigenvalues[k]);
    }
    os << "]}";
    if (i + 1 < report.blocks.size()) os << ",";
    os << "\n";
  }
  os << "  ]";
  if (report.comparison) {
    os << ",\n  \"comparison\": {\"max_gap\": " << format_double(report.comparison->max_gap)
       << ", \"ok\": " << (report.comparison->ok ? "true" : "false") << "}";
  }
  os << "\n}\n";
  return os.str();
}

std::string to_csv(const SpectrumReport& report, const SpectrumReport* other) {
  std::ostringstream os;
  os << "weight_m1,weight_m2,index,value_A,value_B,gap\n";
  for (std::size_t i = 0; i < report.blocks.size(); ++i) {
    const BlockSpectrum& a = report.blocks[i];
    const BlockSpectrum* b = nullptr;
    if (other && i < other->blocks.size() && other->blocks[i].weight == a.weight)
      b = &other->blocks[i];
    for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) {
      os << a.weight.m1 << "," << a.weight.m2 << "," << k << ","
         << format_double(a.eigenvalues[k]) << ",";
      if (b && k < b->eigenvalues.size()) {
        os << format_double(b->eigenvalues[k]) << ","
           << format_double(std::abs(a.eigenvalues[k] - b->eigenvalues[k]));
      } else {
        os << ",";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace isospec::spectral
