#include "oracles.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace isospec::testing {

std::vector<Complex> char_poly_from_eigenvalues(const MatrixXcd& M) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(M);
  const VectorXcd ev = es.eigenvalues();
  std::vector<Complex> coeff{Complex(1.0, 0.0)};
  for (int i = 0; i < ev.size(); ++i) {
    coeff.push_back(Complex(0.0, 0.0));
    for (std::size_t k = coeff.size() - 1; k >= 1; --k) coeff[k] -= ev[i] * coeff[k - 1];
  }
  return coeff;
}

int brute_commutant_dimension(const MatrixXcd& M1, const MatrixXcd& M2,
                              algebra::ConjugationKind kind) {
  const int n = static_cast<int>(M1.rows());
  const int real_dim = 2 * n * n;  // tau as Re/Im entries, column-major
  auto var = [n](int row, int col, bool imag) { return 2 * (col * n + row) + (imag ? 1 : 0); };

  std::vector<VectorXd> rows;
  auto add_commutator_rows = [&](const MatrixXcd& M) {
    // [M, tau](r, c) = sum_k M(r,k) tau(k,c) - tau(r,k) M(k,c); real and
    // imaginary parts give two rows per (r, c).
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        VectorXd re = VectorXd::Zero(real_dim);
        VectorXd im = VectorXd::Zero(real_dim);
        for (int k = 0; k < n; ++k) {
          const Complex a = M(r, k);
          re[var(k, c, false)] += a.real();
          re[var(k, c, true)] -= a.imag();
          im[var(k, c, false)] += a.imag();
          im[var(k, c, true)] += a.real();
          const Complex b = M(k, c);
          re[var(r, k, false)] -= b.real();
          re[var(r, k, true)] += b.imag();
          im[var(r, k, false)] -= b.imag();
          im[var(r, k, true)] -= b.real();
        }
        rows.push_back(re);
        rows.push_back(im);
      }
  };
  add_commutator_rows(M1);
  add_commutator_rows(M2);

  if (kind == algebra::ConjugationKind::Su) {
    // tau^dagger = -tau: Re tau(c,r) + Re tau(r,c) = 0 and
    // Im tau(c,r) - Im tau(r,c) = 0; trace: sum Re = 0, sum Im = 0.
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        VectorXd re = VectorXd::Zero(real_dim);
        re[var(r, c, false)] += 1.0;
        re[var(c, r, false)] += 1.0;
        rows.push_back(re);
        if (r != c) {
          VectorXd im = VectorXd::Zero(real_dim);
          im[var(r, c, true)] += 1.0;
          im[var(c, r, true)] -= 1.0;
          rows.push_back(im);
        }
      }
    VectorXd tr = VectorXd::Zero(real_dim);
    for (int r = 0; r < n; ++r) tr[var(r, r, true)] = 1.0;
    rows.push_back(tr);
  } else {
    // so(3): tau real antisymmetric.
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        VectorXd im = VectorXd::Zero(real_dim);
        im[var(r, c, true)] = 1.0;
        rows.push_back(im);
      }
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        VectorXd re = VectorXd::Zero(real_dim);
        re[var(r, c, false)] += 1.0;
        re[var(c, r, false)] += 1.0;
        rows.push_back(re);
      }
  }

  MatrixXd T(rows.size(), real_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) T.row(i) = rows[i];
  Eigen::JacobiSVD<MatrixXd> svd(T);
  const VectorXd sv = svd.singularValues();
  const double threshold = 1e-9 * std::max(sv[0], 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] >= threshold) ++rank;
  return real_dim - rank;
}

Vector2d eval_su_form_reference(const algebra::SkewMapPair& pair,
                                const geometry::AmbientPoint& pt, const VectorXd& v) {
  const int m = pair.m;
  VectorXcd p(m), x(m);
  for (int j = 0; j < m; ++j) {
    p[j] = Complex(pt.coords[2 * j], pt.coords[2 * j + 1]);
    x[j] = Complex(v[2 * j], v[2 * j + 1]);
  }
  const Complex I(0.0, 1.0);
  auto re_inner = [](const VectorXcd& a, const VectorXcd& b) {
    return (a.adjoint() * b)(0, 0).real();  // <b, a>_R = Re sum b conj(a)
  };
  const double pn2 = p.squaredNorm();
  Vector2d lam;
  for (int k = 0; k < 2; ++k) {
    const VectorXcd jp = (k == 0 ? pair.J1 : pair.J2) * p;
    const VectorXcd ip = I * p;
    lam[k] = pn2 * re_inner(x, jp) - re_inner(ip, x) * re_inner(ip, jp);
  }
  return lam;
}

Vector2d eval_sym_form_reference(const algebra::SymMapPair& pair,
                                 const geometry::AmbientPoint& pt, const VectorXd& v) {
  const Complex z1(pt.coords[0], pt.coords[1]), z2(pt.coords[2], pt.coords[3]);
  const Complex x1(v[0], v[1]), x2(v[2], v[3]);
  auto hopf = [](Complex a, Complex b) {
    const Complex cross = std::conj(a) * b;
    return Vector3d(0.5 * (std::norm(a) - std::norm(b)), cross.real(), cross.imag());
  };
  const Vector3d P = hopf(z1, z2);
  // Polarization of the quadratic map.
  const Complex cross_d = std::conj(x1) * z2 + std::conj(z1) * x2;
  const Vector3d dP((std::conj(x1) * z1).real() - (std::conj(x2) * z2).real(),
                    cross_d.real(), cross_d.imag());
  Vector2d lam;
  lam[0] = (pair.C1 * P).cross(P).dot(dP);
  lam[1] = (pair.C2 * P).cross(P).dot(dP);
  return lam;
}

namespace {

// psi(s, t): (p, q) + s X + t Y renormalized blockwise to M_{a,b}.
geometry::AmbientPoint retract(const geometry::AmbientPoint& pt, const VectorXd& disp,
                               double a, double b) {
  const int m = pt.m;
  VectorXd c = pt.coords + disp;
  const double pn = c.head(2 * m).norm();
  const double qn = c.tail(2).norm();
  c.head(2 * m) *= a / pn;
  c.tail(2) *= b / qn;
  return geometry::AmbientPoint(m, std::move(c));
}

// d/dt retract((p,q) + s X + t Y)|_t at given s, evaluated analytically.
VectorXd retract_velocity(const geometry::AmbientPoint& pt, const VectorXd& X,
                          const VectorXd& Y, double s, double a, double b) {
  const int m = pt.m;
  const VectorXd base = pt.coords + s * X;
  VectorXd vel(base.size());
  const auto bp = base.head(2 * m);
  const auto yp = Y.head(2 * m);
  const double np = bp.norm();
  vel.head(2 * m) = a * (yp / np - bp * (bp.dot(yp)) / (np * np * np));
  const auto bq = base.tail(2);
  const auto yq = Y.tail(2);
  const double nq = bq.norm();
  vel.tail(2) = b * (yq / nq - bq * (bq.dot(yq)) / (nq * nq * nq));
  return vel;
}

}  // namespace

Vector2d fd_exterior_derivative(const geometry::AdmissibleForm& form,
                                const geometry::AmbientPoint& pt, const VectorXd& X,
                                const VectorXd& Y, double h) {
  const double a = std::sqrt(pt.p_norm2());
  const double b = std::sqrt(pt.q_norm2());
  // lambda evaluated on the t-velocity field along the s-curve (and with the
  // roles swapped); coordinate fields of one patch commute, so no bracket
  // term appears.
  auto G = [&](double s) {
    const geometry::AmbientPoint x = retract(pt, s * X, a, b);
    return geometry::eval_form(form, geometry::TangentVector{x, retract_velocity(pt, X, Y, s, a, b)});
  };
  auto H = [&](double t) {
    const geometry::AmbientPoint x = retract(pt, t * Y, a, b);
    return geometry::eval_form(form, geometry::TangentVector{x, retract_velocity(pt, Y, X, t, a, b)});
  };
  auto central = [](auto&& f, double step) { return (f(step) - f(-step)) / (2.0 * step); };
  const Vector2d dG = (4.0 * central(G, h / 2) - central(G, h)) / 3.0;
  const Vector2d dH = (4.0 * central(H, h / 2) - central(H, h)) / 3.0;
  return dG - dH;
}

double round_eigenvalue(int m, int k) { return static_cast<double>(k) * (k + 2 * m); }

long round_multiplicity(int m, int k) {
  // dim H_k on S^{2m+1}: (2k + 2m) / (2m) * binom(k + 2m - 1, k).
  if (k == 0) return 1;
  const int n = 2 * m + 1;
  auto binom = [](long a, long b) {
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return (2 * k + n - 1) * binom(k + n - 2, k) / (n - 1);
}

MatrixXcd random_skew_hermitian(int m, RandomSource& rng) {
  MatrixXcd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rng.gaussian_complex();
  MatrixXcd s = 0.5 * (g - g.adjoint());
  s -= (s.trace() / static_cast<double>(m)) * MatrixXcd::Identity(m, m);
  return s;
}

Matrix3d random_sym_traceless(RandomSource& rng) {
  Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = rng.gaussian();
  Matrix3d s = 0.5 * (g + g.transpose());
  s -= (s.trace() / 3.0) * Matrix3d::Identity();
  return s;
}

algebra::SkewMapPair random_skew_pair(int m, RandomSource& rng) {
  return algebra::SkewMapPair::checked(random_skew_hermitian(m, rng),
                                       random_skew_hermitian(m, rng), 1e-9);
}

algebra::SymMapPair random_sym_pair(RandomSource& rng) {
  return algebra::SymMapPair::checked(random_sym_traceless(rng), random_sym_traceless(rng),
                                      1e-9);
}

geometry::AmbientPoint random_product_point(int m, double a, double b, RandomSource& rng) {
  VectorXd coords(2 * m + 2);
  coords.head(2 * m) = a * rng.unit_vector(2 * m);
  coords.tail(2) = b * rng.unit_vector(2);
  return geometry::AmbientPoint(m, std::move(coords));
}

VectorXd random_product_tangent(const geometry::AmbientPoint& pt, RandomSource& rng) {
  const int n = pt.ambient_dim();
  for (;;) {
    VectorXd v = rng.unit_vector(n);
    VectorXd np = VectorXd::Zero(n);
    np.head(2 * pt.m) = pt.coords.head(2 * pt.m).normalized();
    VectorXd nq = VectorXd::Zero(n);
    nq.tail(2) = pt.coords.tail(2).normalized();
    v -= v.dot(np) * np;
    v -= v.dot(nq) * nq;
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

}  // namespace isospec::testing
