#include "isospec/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "isospec/hopf.hpp"

namespace isospec::algebra {

namespace {

constexpr double kWitnessSpectrumTol = 1e-8;
constexpr double kRotationTol = 1e-10;

void require_skew_hermitian(const MatrixXcd& J, double tol, const char* label) {
  if (J.rows() != J.cols()) throw DimensionMismatch(std::string(label) + ": not square");
  const double skew = (J.adjoint() + J).cwiseAbs().maxCoeff();
  if (skew > tol) throw Error(std::string(label) + ": not skew-hermitian");
  if (std::abs(J.trace()) > tol) throw Error(std::string(label) + ": nonzero trace");
}

void require_sym_traceless(const Matrix3d& C, double tol, const char* label) {
  if ((C - C.transpose()).cwiseAbs().maxCoeff() > tol)
    throw Error(std::string(label) + ": not symmetric");
  if (std::abs(C.trace()) > tol) throw Error(std::string(label) + ": nonzero trace");
}

// Chebyshev abscissae on [-1, 1].
std::vector<double> chebyshev_points(int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = std::cos((2.0 * k + 1.0) * M_PI / (2.0 * n));
  return x;
}

template <typename PairT>
IsospectralCertificate check_isospectral_impl(const PairT& a, const PairT& b,
                                              int grid_size, double tol, int m) {
  int g = m + 1;
  while (g * g < grid_size) ++g;
  const std::vector<double> pts = chebyshev_points(g);
  double max_gap = 0.0;
  for (double s : pts) {
    for (double u : pts) {
      const std::vector<Complex> ca = char_poly_at(a, s, u);
      const std::vector<Complex> cb = char_poly_at(b, s, u);
      for (std::size_t i = 0; i < ca.size(); ++i)
        max_gap = std::max(max_gap, std::abs(ca[i] - cb[i]));
    }
  }
  return IsospectralCertificate{max_gap <= tol, max_gap};
}

double invariant_of(const MatrixXcd& M1, const MatrixXcd& M2) {
  const MatrixXcd s = M1 * M1 + M2 * M2;
  const Complex tr = (s * s).trace();
  if (std::abs(tr.imag()) > 1e-12)
    throw Error("equivalence_invariant: trace has nonreal part");
  return tr.real();
}

// Real basis of su(m): off-diagonal real/imaginary generators plus traceless
// imaginary diagonals.  Dimension m^2 - 1.
std::vector<MatrixXcd> su_basis(int m) {
  std::vector<MatrixXcd> basis;
  const Complex I(0.0, 1.0);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      MatrixXcd re = MatrixXcd::Zero(m, m);
      re(a, b) = 1.0;
      re(b, a) = -1.0;
      basis.push_back(re);
      MatrixXcd im = MatrixXcd::Zero(m, m);
      im(a, b) = I;
      im(b, a) = I;
      basis.push_back(im);
    }
  }
  for (int a = 0; a + 1 < m; ++a) {
    MatrixXcd d = MatrixXcd::Zero(m, m);
    d(a, a) = I;
    d(a + 1, a + 1) = -I;
    basis.push_back(d);
  }
  return basis;
}

std::vector<MatrixXcd> so3_basis() {
  std::vector<MatrixXcd> basis;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    MatrixXcd l = MatrixXcd::Zero(3, 3);
    l(a, b) = 1.0;
    l(b, a) = -1.0;
    basis.push_back(l);
  }
  return basis;
}

int commutant_dimension_impl(const MatrixXcd& M1, const MatrixXcd& M2,
                             const std::vector<MatrixXcd>& basis) {
  const int n = static_cast<int>(M1.rows());
  const int dim = static_cast<int>(basis.size());
  MatrixXd T(4 * n * n, dim);
  for (int j = 0; j < dim; ++j) {
    const MatrixXcd c1 = M1 * basis[j] - basis[j] * M1;
    const MatrixXcd c2 = M2 * basis[j] - basis[j] * M2;
    int r = 0;
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) {
        T(r++, j) = c1(row, col).real();
        T(r++, j) = c1(row, col).imag();
      }
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) {
        T(r++, j) = c2(row, col).real();
        T(r++, j) = c2(row, col).imag();
      }
  }
  Eigen::JacobiSVD<MatrixXd> svd(T);
  const VectorXd sv = svd.singularValues();
  // Scale-invariant rank cut, floored at 1 so an all-zero map has full nullity.
  const double threshold = 1e-9 * std::max(sv.size() > 0 ? sv[0] : 0.0, 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] >= threshold) ++rank;
  return dim - rank;
}

// Quaternion (w,x,y,z) with rotation matrix equal to E (Shepperd's method).
Vector4d rotation_to_quaternion(const Matrix3d& E) {
  const double tr = E.trace();
  Vector4d q;  // (w, x, y, z)
  const double w2 = 1.0 + tr;
  const double x2 = 1.0 + 2.0 * E(0, 0) - tr;
  const double y2 = 1.0 + 2.0 * E(1, 1) - tr;
  const double z2 = 1.0 + 2.0 * E(2, 2) - tr;
  int pivot = 0;
  double best = w2;
  if (x2 > best) { best = x2; pivot = 1; }
  if (y2 > best) { best = y2; pivot = 2; }
  if (z2 > best) { best = z2; pivot = 3; }
  switch (pivot) {
    case 0: {
      const double w = 0.5 * std::sqrt(w2);
      q << w, (E(2, 1) - E(1, 2)) / (4 * w), (E(0, 2) - E(2, 0)) / (4 * w),
          (E(1, 0) - E(0, 1)) / (4 * w);
      break;
    }
    case 1: {
      const double x = 0.5 * std::sqrt(x2);
      q << (E(2, 1) - E(1, 2)) / (4 * x), x, (E(0, 1) + E(1, 0)) / (4 * x),
          (E(0, 2) + E(2, 0)) / (4 * x);
      break;
    }
    case 2: {
      const double y = 0.5 * std::sqrt(y2);
      q << (E(0, 2) - E(2, 0)) / (4 * y), (E(0, 1) + E(1, 0)) / (4 * y), y,
          (E(1, 2) + E(2, 1)) / (4 * y);
      break;
    }
    default: {
      const double z = 0.5 * std::sqrt(z2);
      q << (E(1, 0) - E(0, 1)) / (4 * z), (E(0, 2) + E(2, 0)) / (4 * z),
          (E(1, 2) + E(2, 1)) / (4 * z), z;
      break;
    }
  }
  return q.normalized();
}

}  // namespace

SkewMapPair SkewMapPair::checked(MatrixXcd J1, MatrixXcd J2, double tol) {
  require_skew_hermitian(J1, tol, "SkewMapPair.J1");
  require_skew_hermitian(J2, tol, "SkewMapPair.J2");
  if (J1.rows() != J2.rows()) throw DimensionMismatch("SkewMapPair: J1/J2 size mismatch");
  if (J1.rows() < 2) throw DimensionMismatch("SkewMapPair: m must be >= 2");
  SkewMapPair p;
  p.m = static_cast<int>(J1.rows());
  p.J1 = std::move(J1);
  p.J2 = std::move(J2);
  return p;
}

SkewMapPair SkewMapPair::zero(int m) {
  return checked(MatrixXcd::Zero(m, m), MatrixXcd::Zero(m, m));
}

SymMapPair SymMapPair::checked(Matrix3d C1, Matrix3d C2, double tol) {
  require_sym_traceless(C1, tol, "SymMapPair.C1");
  require_sym_traceless(C2, tol, "SymMapPair.C2");
  return SymMapPair{C1, C2};
}

SymMapPair SymMapPair::zero() {
  return SymMapPair{Matrix3d::Zero(), Matrix3d::Zero()};
}

Vector2d dual_vector(const TorusWeight& mu) {
  return Vector2d(static_cast<double>(mu.m1), static_cast<double>(mu.m2));
}

const std::array<SignSymmetry, 4>& SignSymmetry::all() {
  static const std::array<SignSymmetry, 4> elems = {
      SignSymmetry{1, 1}, SignSymmetry{1, -1}, SignSymmetry{-1, 1}, SignSymmetry{-1, -1}};
  return elems;
}

std::vector<Complex> char_poly_at(const MatrixXcd& M1, const MatrixXcd& M2,
                                  double s, double u) {
  if (M1.rows() != M2.rows() || M1.cols() != M2.cols())
    throw DimensionMismatch("char_poly_at: operand size mismatch");
  const int n = static_cast<int>(M1.rows());
  const MatrixXcd M = s * M1 + u * M2;
  // Faddeev-LeVerrier: c_{k} = -tr(M (M_{k-1} + c_{k-1} I)) / k.
  std::vector<Complex> coeff(n + 1);
  coeff[0] = 1.0;
  MatrixXcd Mk = MatrixXcd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    Mk = M * (Mk + coeff[k - 1] * MatrixXcd::Identity(n, n));
    coeff[k] = -Mk.trace() / static_cast<double>(k);
  }
  return coeff;
}

std::vector<Complex> char_poly_at(const SkewMapPair& pair, double s, double u) {
  return char_poly_at(pair.J1, pair.J2, s, u);
}

std::vector<Complex> char_poly_at(const SymMapPair& pair, double s, double u) {
  return char_poly_at(pair.C1.cast<Complex>(), pair.C2.cast<Complex>(), s, u);
}

IsospectralCertificate check_isospectral(const SkewMapPair& a, const SkewMapPair& b,
                                         int grid_size, double tol) {
  if (a.m != b.m) throw DimensionMismatch("check_isospectral: pair dimensions differ");
  return check_isospectral_impl(a, b, grid_size, tol, a.m);
}

IsospectralCertificate check_isospectral(const SymMapPair& a, const SymMapPair& b,
                                         int grid_size, double tol) {
  return check_isospectral_impl(a, b, grid_size, tol, 3);
}

double equivalence_invariant(const SkewMapPair& pair) {
  return invariant_of(pair.J1, pair.J2);
}

double equivalence_invariant(const SymMapPair& pair) {
  return invariant_of(pair.C1.cast<Complex>(), pair.C2.cast<Complex>());
}

int commutant_dimension(const SkewMapPair& pair) {
  return commutant_dimension_impl(pair.J1, pair.J2, su_basis(pair.m));
}

int commutant_dimension(const SymMapPair& pair) {
  return commutant_dimension_impl(pair.C1.cast<Complex>(), pair.C2.cast<Complex>(), so3_basis());
}

ConjugationWitness conjugation_witness(const MatrixXcd& X, const MatrixXcd& Xp,
                                       ConjugationKind kind) {
  if (X.rows() != Xp.rows() || X.cols() != Xp.cols())
    throw DimensionMismatch("conjugation_witness: operand size mismatch");
  const int n = static_cast<int>(X.rows());
  MatrixXcd A;
  if (kind == ConjugationKind::Su) {
    // X skew-hermitian <=> -iX hermitian; shared real eigenbasis machinery.
    const Complex mi(0.0, -1.0);
    MatrixXcd H = mi * X;
    MatrixXcd Hp = mi * Xp;
    H = 0.5 * (H + H.adjoint()).eval();
    Hp = 0.5 * (Hp + Hp.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H), esp(Hp);
    if ((es.eigenvalues() - esp.eigenvalues()).cwiseAbs().maxCoeff() > kWitnessSpectrumTol)
      throw NotIsospectral("conjugation_witness: spectra differ");
    A = esp.eigenvectors() * es.eigenvectors().adjoint();
    // det lies on the unit circle; a scalar phase does not change the
    // conjugation action, so rotate it to 1.
    const double theta = std::arg(A.determinant());
    A *= std::polar(1.0, -theta / n);
  } else {
    if (X.imag().cwiseAbs().maxCoeff() > 1e-12 || Xp.imag().cwiseAbs().maxCoeff() > 1e-12)
      throw Error("conjugation_witness(Sym): inputs must be real symmetric");
    MatrixXd S = X.real(), Sp = Xp.real();
    S = 0.5 * (S + S.transpose()).eval();
    Sp = 0.5 * (Sp + Sp.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S), esp(Sp);
    if ((es.eigenvalues() - esp.eigenvalues()).cwiseAbs().maxCoeff() > kWitnessSpectrumTol)
      throw NotIsospectral("conjugation_witness: spectra differ");
    MatrixXd V = es.eigenvectors(), Vp = esp.eigenvectors();
    MatrixXd Ar = Vp * V.transpose();
    if (Ar.determinant() < 0) {
      // Flipping one eigenvector keeps the conjugation and fixes the sign.
      Vp.col(0) *= -1.0;
      Ar = Vp * V.transpose();
    }
    A = Ar.cast<Complex>();
  }
  ConjugationWitness w;
  w.A = A;
  w.residual = (A * X * A.adjoint() - Xp).cwiseAbs().maxCoeff();
  return w;
}

Matrix2cd su2_lift(const Matrix3d& E) {
  if ((E.transpose() * E - Matrix3d::Identity()).cwiseAbs().maxCoeff() > kRotationTol ||
      std::abs(E.determinant() - 1.0) > kRotationTol)
    throw NotARotation("su2_lift: input is not in SO(3)");

  const Vector4d g = rotation_to_quaternion(E);  // (w, x, y, z)

  // Left quaternion multiplication by g in (w, x, y, z) coordinates.
  Eigen::Matrix4d L;
  L << g[0], -g[1], -g[2], -g[3],
       g[1],  g[0], -g[3],  g[2],
       g[2],  g[3],  g[0], -g[1],
       g[3], -g[2],  g[1],  g[0];

  // Coordinate change between the sphere coordinates (alpha, beta, gamma,
  // delta) of hopf_P and quaternion coordinates: (w,x,y,z) = (beta, alpha,
  // gamma, delta).  In these coordinates P(p) is half the image of the first
  // axis under the rotation of the quaternion, so left multiplication by g
  // realizes E downstairs.  The swap is an involution.
  Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
  S(0, 0) = S(1, 1) = 0.0;
  S(0, 1) = S(1, 0) = 1.0;
  const Eigen::Matrix4d A_real = S * L * S;

  // Complex 2x2 from the images of the basis vectors of C^2.
  const Vector4d u = A_real.col(0);  // image of p = (1, 0)
  const Vector4d v = A_real.col(2);  // image of p = (0, 1)
  Matrix2cd A;
  A << Complex(u[0], u[1]), Complex(v[0], v[1]),
       Complex(u[2], u[3]), Complex(v[2], v[3]);

  // Covering-map check on a fixed sample set: P(A p) = E P(p).
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto next01 = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  double max_err = 0.0;
  for (int k = 0; k < 64; ++k) {
    Vector4d p;
    for (int i = 0; i < 4; ++i) p[i] = next01();
    max_err = std::max(max_err,
                       (geometry::hopf_P(A_real * p) - E * geometry::hopf_P(p)).cwiseAbs().maxCoeff());
  }
  if (max_err > 1e-9) throw Error("su2_lift: covering-map verification failed");
  return A;
}

SkewMapPair family_j(double t) {
  const Complex I(0.0, 1.0);
  MatrixXcd J1 = MatrixXcd::Zero(3, 3);
  J1(0, 0) = -I;
  J1(2, 2) = I;
  const double c = std::cos(t);
  const double s = std::sqrt(2.0) * std::sin(t);
  MatrixXcd J2 = MatrixXcd::Zero(3, 3);
  J2(0, 1) = c;
  J2(0, 2) = s;
  J2(1, 0) = -c;
  J2(1, 2) = c;
  J2(2, 0) = -s;
  J2(2, 1) = -c;
  return SkewMapPair::checked(J1, J2);
}

std::pair<SymMapPair, SymMapPair> pair_c() {
  Matrix3d C1;
  C1 << -1, 0, 0,
         0, 0, 0,
         0, 0, 1;
  Matrix3d C2;
  C2 << 0, 1, 0,
        1, 0, 1,
        0, 1, 0;
  const double r = std::sqrt(2.0);
  Matrix3d C2p;
  C2p << 0, 0, r,
         0, 0, 0,
         r, 0, 0;
  return {SymMapPair::checked(C1, C2), SymMapPair::checked(C1, C2p)};
}

SkewMapPair transform_pair(const SkewMapPair& pair, const MatrixXcd& A,
                           const SignSymmetry& eps, bool conjugate_twist) {
  auto act = [&](const MatrixXcd& J, int e) {
    MatrixXcd M = static_cast<double>(e) * J;
    if (conjugate_twist) M = M.conjugate();
    return (A * M * A.adjoint()).eval();
  };
  return SkewMapPair::checked(act(pair.J1, eps.eps1), act(pair.J2, eps.eps2), 1e-9);
}

SymMapPair transform_pair(const SymMapPair& pair, const Matrix3d& E,
                          const SignSymmetry& eps) {
  auto act = [&](const Matrix3d& C, int e) {
    return (static_cast<double>(e) * E * C * E.transpose()).eval();
  };
  return SymMapPair::checked(act(pair.C1, eps.eps1), act(pair.C2, eps.eps2), 1e-9);
}

}  // namespace isospec::algebra
