#pragma once

#include <array>
#include <utility>
#include <vector>

#include "isospec/types.hpp"

namespace isospec::algebra {

// A linear map h ~ R^2 -> su(m), stored as its values J1, J2 at the standard
// basis Z1, Z2.  Entries are skew-hermitian and traceless.
struct SkewMapPair {
  int m = 0;
  MatrixXcd J1, J2;

  // Validates skew-hermicity and tracelessness (entrywise tolerance `tol`).
  static SkewMapPair checked(MatrixXcd J1, MatrixXcd J2, double tol = 1e-12);

  // m x m zero pair (the round metric).
  static SkewMapPair zero(int m);
};

// A linear map h ~ R^2 -> Sym_0(R^3): traceless symmetric real 3x3 values.
struct SymMapPair {
  Matrix3d C1, C2;

  static SymMapPair checked(Matrix3d C1, Matrix3d C2, double tol = 1e-12);
  static SymMapPair zero();
};

// A weight mu in the dual lattice, written in the basis dual to {Z1, Z2}.
struct TorusWeight {
  int m1 = 0;
  int m2 = 0;

  bool is_zero() const { return m1 == 0 && m2 == 0; }
  friend bool operator==(const TorusWeight&, const TorusWeight&) = default;
  friend auto operator<=>(const TorusWeight&, const TorusWeight&) = default;
};

// The canonical identification of a weight with a Lie-algebra vector
// Z = m1 Z1 + m2 Z2.
Vector2d dual_vector(const TorusWeight& mu);

// One of the four linear automorphisms of h preserving {+-Z1} and {+-Z2}.
struct SignSymmetry {
  int eps1 = 1;
  int eps2 = 1;

  static const std::array<SignSymmetry, 4>& all();
};

enum class ConjugationKind { Su, Sym };

// A conjugating matrix A with A X A^{-1} = X' up to `residual` (max norm).
// Unitary with det 1 for Su, orthogonal with det 1 for Sym (stored with zero
// imaginary part in that case).
struct ConjugationWitness {
  MatrixXcd A;
  double residual = 0.0;
};

struct IsospectralCertificate {
  bool ok = false;
  double max_coeff_gap = 0.0;
};

// Coefficients of det(lambda I - (s M1 + u M2)) in descending powers, leading
// coefficient 1, length m+1.  Computed by Faddeev-LeVerrier so the route is
// independent of any eigenvalue solver.
std::vector<Complex> char_poly_at(const MatrixXcd& M1, const MatrixXcd& M2, double s, double u);
std::vector<Complex> char_poly_at(const SkewMapPair& pair, double s, double u);
std::vector<Complex> char_poly_at(const SymMapPair& pair, double s, double u);

// Certifies char-poly agreement of the two pencils for every Z in h by
// comparing coefficients on a Chebyshev tensor grid.  The coefficients are
// bivariate polynomials of total degree <= m in (s,u), so agreement on an
// (m+1) x (m+1) grid of distinct abscissae already determines them; the grid
// is enlarged until it has at least `grid_size` points.
IsospectralCertificate check_isospectral(const SkewMapPair& a, const SkewMapPair& b,
                                         int grid_size, double tol);
IsospectralCertificate check_isospectral(const SymMapPair& a, const SymMapPair& b,
                                         int grid_size, double tol);

// tr((M1^2 + M2^2)^2).  Invariant of the equivalence action; separates
// non-equivalent pairs.
double equivalence_invariant(const SkewMapPair& pair);
double equivalence_invariant(const SymMapPair& pair);

// Dimension of {tau in su(m) : [M1,tau] = [M2,tau] = 0}, resp. the analogue
// in so(3).  Zero means the pair is generic.
int commutant_dimension(const SkewMapPair& pair);
int commutant_dimension(const SymMapPair& pair);

// Finds A in SU(n) (Su) resp. SO(3) (Sym) with A X A^{-1} = X'.  Inputs must
// be isospectral as single matrices (sorted-eigenvalue check, tol 1e-8);
// throws NotIsospectral otherwise.  With degenerate eigenvalues any
// eigenspace-to-eigenspace alignment is produced; the residual field is the
// authoritative quality measure.
ConjugationWitness conjugation_witness(const MatrixXcd& X, const MatrixXcd& Xp,
                                       ConjugationKind kind);

// The Hopf double cover: A in SU(2) with P(A p) = E P(p) for all p in R^4,
// where P is geometry::hopf_P.  Either preimage +-A may be returned.
// Throws NotARotation unless E is orthogonal with det 1 (tol 1e-10).
Matrix2cd su2_lift(const Matrix3d& E);

// The explicit su(3) family of maps j(t): J1 constant, J2 with entries
// +-cos t and +-sqrt(2) sin t.  Pairwise isospectral, pairwise nonequivalent
// (invariant 14 + 4 sin^2 t), generic iff cos t != 0.
SkewMapPair family_j(double t);

// The explicit pair c, c' into Sym_0(R^3): isospectral, nonequivalent
// (invariants 14 vs 18), both generic.
std::pair<SymMapPair, SymMapPair> pair_c();

// The full equivalence action on pairs: M_k -> A conj?(eps_k M_{k}) A^{-1}.
// Used by property tests of equivalence_invariant.
SkewMapPair transform_pair(const SkewMapPair& pair, const MatrixXcd& A,
                           const SignSymmetry& eps, bool conjugate_twist);
SymMapPair transform_pair(const SymMapPair& pair, const Matrix3d& E,
                          const SignSymmetry& eps);

}  // namespace isospec::algebra
