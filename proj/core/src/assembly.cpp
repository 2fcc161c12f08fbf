#include "isospec/assembly.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "isospec/parallel.hpp"

namespace isospec::spectral {

namespace {

struct BlockAccumulator {
  std::vector<MatrixXcd> mass;
  std::vector<MatrixXcd> stiffness;

  explicit BlockAccumulator(const std::vector<std::pair<algebra::TorusWeight, std::vector<int>>>& slices) {
    mass.reserve(slices.size());
    stiffness.reserve(slices.size());
    for (const auto& [w, idx] : slices) {
      const int n = static_cast<int>(idx.size());
      mass.emplace_back(MatrixXcd::Zero(n, n));
      stiffness.emplace_back(MatrixXcd::Zero(n, n));
    }
  }

  void add(const BlockAccumulator& other) {
    for (std::size_t b = 0; b < mass.size(); ++b) {
      mass[b] += other.mass[b];
      stiffness[b] += other.stiffness[b];
    }
  }
};

}  // namespace

std::vector<WeightBlock> assemble_blocks(const MonomialBasis& basis,
                                         const QuadratureRule& quad,
                                         const geometry::AdmissibleForm& form,
                                         MassWeighting weighting) {
  if (basis.m != quad.m() || basis.m != form.m())
    throw DimensionMismatch("assemble_blocks: m mismatch between basis/quadrature/form");
  if (quad.symmetry_order() < 2 * basis.N + 1)
    throw SymmetryViolation("assemble_blocks: quadrature symmetry order below 2N+1");

  const auto slices = basis.weight_slices();
  const std::size_t n_nodes = quad.orbit_nodes().size();
  const int d = quad.surface().tangent_dim(basis.m);
  const int vars = 2 * basis.m + 2;

  const std::size_t chunk = 256;
  const std::size_t n_chunks = (n_nodes + chunk - 1) / chunk;
  std::vector<BlockAccumulator> partial(n_chunks, BlockAccumulator(slices));

  parallel_for_chunks(n_nodes, chunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    BlockAccumulator& acc = partial[c];
    MatrixXd grad_frame_re, grad_frame_im, sol_re, sol_im;
    for (std::size_t node = begin; node < end; ++node) {
      const geometry::AmbientPoint& pt = quad.orbit_nodes()[node];
      double w = quad.orbit_weights()[node];

      const std::vector<VectorXd> frame = geometry::tangent_frame(pt, quad.surface());
      const geometry::MetricSample ms = geometry::metric_gram(form, pt, frame);
      if (weighting == MassWeighting::MetricVolume)
        w *= std::sqrt(ms.gram.determinant());
      const Eigen::LLT<MatrixXd> llt(ms.gram);

      const BasisEvaluation ev = evaluate_basis(basis, pt);
      const std::size_t n_entries = basis.entries.size();

      // Frame components of the differentials, split into real and imaginary
      // parts so the real SPD solve handles both at once.
      grad_frame_re.resize(d, n_entries);
      grad_frame_im.resize(d, n_entries);
      for (std::size_t e = 0; e < n_entries; ++e)
        for (int k = 0; k < d; ++k) {
          Complex df(0.0, 0.0);
          const Complex* g = ev.grad.data() + e * vars;
          for (int j = 0; j <= basis.m; ++j) {
            const Complex dir(frame[k][2 * j], frame[k][2 * j + 1]);
            df += g[2 * j] * dir + g[2 * j + 1] * std::conj(dir);
          }
          grad_frame_re(k, e) = df.real();
          grad_frame_im(k, e) = df.imag();
        }
      sol_re = llt.solve(grad_frame_re);
      sol_im = llt.solve(grad_frame_im);

      for (std::size_t b = 0; b < slices.size(); ++b) {
        const std::vector<int>& idx = slices[b].second;
        const int n = static_cast<int>(idx.size());
        MatrixXcd& mass = acc.mass[b];
        MatrixXcd& stiff = acc.stiffness[b];
        for (int i = 0; i < n; ++i) {
          const int ei = idx[i];
          const Complex vi = ev.value[ei];
          for (int j = i; j < n; ++j) {
            const int ej = idx[j];
            mass(i, j) += w * vi * std::conj(ev.value[ej]);
            // c_i . conj(G^{-1} c_j), expanded over real/imag parts.
            double re = 0.0, im = 0.0;
            for (int k = 0; k < d; ++k) {
              const double air = grad_frame_re(k, ei), aii = grad_frame_im(k, ei);
              const double bjr = sol_re(k, ej), bji = sol_im(k, ej);
              re += air * bjr + aii * bji;
              im += aii * bjr - air * bji;
            }
            stiff(i, j) += w * Complex(re, im);
          }
        }
      }
    }
  });

  // Deterministic combine in chunk order.
  BlockAccumulator total(slices);
  for (const BlockAccumulator& p : partial) total.add(p);

  std::vector<WeightBlock> blocks;
  blocks.reserve(slices.size());
  for (std::size_t b = 0; b < slices.size(); ++b) {
    WeightBlock blk;
    blk.weight = slices[b].first;
    blk.entry_indices = slices[b].second;
    blk.mass = total.mass[b];
    blk.stiffness = total.stiffness[b];
    const int n = static_cast<int>(blk.entry_indices.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        blk.mass(i, j) = std::conj(blk.mass(j, i));
        blk.stiffness(i, j) = std::conj(blk.stiffness(j, i));
      }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::vector<double> solve_block(WeightBlock& block) {
  const int n = static_cast<int>(block.mass.rows());
  if (n == 0) {
    block.filtered_rank = 0;
    return {};
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> mass_es(block.mass);
  const VectorXd mev = mass_es.eigenvalues();
  const double max_ev = mev.cwiseAbs().maxCoeff();
  const double threshold = 1e-10 * max_ev;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (mev[i] > threshold) keep.push_back(i);
  block.filtered_rank = static_cast<int>(keep.size());
  if (keep.empty()) return {};

  MatrixXcd B(n, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    B.col(k) = mass_es.eigenvectors().col(keep[k]) / std::sqrt(mev[keep[k]]);

  MatrixXcd reduced = B.adjoint() * block.stiffness * B;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(reduced);
  const VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace isospec::spectral
