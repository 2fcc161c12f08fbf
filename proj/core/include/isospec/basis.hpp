#pragma once

#include <vector>

#include "isospec/algebra.hpp"
#include "isospec/geometry.hpp"
#include "isospec/types.hpp"

namespace isospec::spectral {

// One monomial p^alpha pbar^beta q^gamma qbar^delta over C^m + C.
struct BasisEntry {
  std::vector<int> alpha;  // size m
  std::vector<int> beta;   // size m
  int gamma = 0;
  int delta = 0;

  int degree() const;
  algebra::TorusWeight weight() const;
};

// All monomials of total degree <= N, entries sorted lexicographically on the
// flattened exponent tuple.  Count is binom(2m+2+N, N).
struct MonomialBasis {
  int m = 0;
  int N = 0;
  std::vector<BasisEntry> entries;

  static MonomialBasis build(int m, int N);

  // Indices grouped by torus weight, weights sorted ascending.
  std::vector<std::pair<algebra::TorusWeight, std::vector<int>>> weight_slices() const;
};

// Values and Wirtinger gradients of every entry at one point.  grad is laid
// out entry-major: d/dz_j at [e][2j], d/dzbar_j at [e][2j+1].
struct BasisEvaluation {
  std::vector<Complex> value;
  std::vector<Complex> grad;
  int vars = 0;

  // Differential along a real ambient direction (interleaved coordinates).
  Complex directional(int entry, const VectorXd& dir, int m) const;
};

BasisEvaluation evaluate_basis(const MonomialBasis& basis, const geometry::AmbientPoint& pt);

// A polynomial supported on monomials of one torus weight; used by the
// Rayleigh-quotient identity checks.
struct WeightPolynomial {
  int m = 0;
  algebra::TorusWeight weight;
  std::vector<BasisEntry> terms;
  std::vector<Complex> coeffs;

  Complex value_at(const geometry::AmbientPoint& pt) const;
  // Wirtinger gradient (layout as in BasisEvaluation).
  std::vector<Complex> gradient_at(const geometry::AmbientPoint& pt) const;
};

Complex directional_from_wirtinger(const std::vector<Complex>& grad, const VectorXd& dir, int m);

}  // namespace isospec::spectral
