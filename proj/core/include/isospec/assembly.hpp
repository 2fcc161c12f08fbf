#pragma once

#include <vector>

#include "isospec/basis.hpp"
#include "isospec/geometry.hpp"
#include "isospec/quadrature.hpp"
#include "isospec/types.hpp"

namespace isospec::spectral {

// Mass and stiffness of the Rayleigh quotient restricted to one torus-weight
// slice of the monomial basis.  Cross-weight couplings vanish identically
// under the K-fold node symmetry, so blocks are assembled independently.
struct WeightBlock {
  algebra::TorusWeight weight;
  std::vector<int> entry_indices;  // into the basis
  MatrixXcd mass;
  MatrixXcd stiffness;
  int filtered_rank = -1;  // set by solve_block
};

// dvol_{g_lambda} equals dvol_{g_0}; MetricVolume forces the sqrt(det gram)
// factor anyway so tests can confirm the equality numerically.
enum class MassWeighting { RoundVolume, MetricVolume };

// Galerkin assembly over the quadrature's torus-orbit representatives.
// mass(i,j)      = sum w phi_i conj(phi_j)
// stiffness(i,j) = sum w g_lambda^{-1}(d phi_i, d conj(phi_j)),
// evaluated through the orthonormal round frame and the metric Gram matrix.
// Requires quad.symmetry_order() >= 2N+1 (throws SymmetryViolation).
std::vector<WeightBlock> assemble_blocks(const MonomialBasis& basis,
                                         const QuadratureRule& quad,
                                         const geometry::AdmissibleForm& form,
                                         MassWeighting weighting = MassWeighting::RoundVolume);

// Generalized eigenvalues S v = mu M v on the block, with the mass null space
// (restriction kernel) projected out first: eigendirections of M below
// 1e-10 x max eigenvalue are dropped.  Returns eigenvalues ascending and sets
// block.filtered_rank.
std::vector<double> solve_block(WeightBlock& block);

}  // namespace isospec::spectral
