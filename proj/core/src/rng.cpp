#include "isospec/rng.hpp"

#include <cmath>

namespace isospec {

double RandomSource::uniform() {
  // 53 random bits -> double in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomSource::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t RandomSource::index(std::uint64_t n) {
  // Modulo bias is irrelevant at the sizes used here (n << 2^64).
  return engine_() % n;
}

Complex RandomSource::gaussian_complex() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

VectorXd RandomSource::unit_vector(int n) {
  VectorXd v(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-24);
  return v / std::sqrt(norm2);
}

MatrixXcd RandomSource::special_unitary(int n) {
  MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian_complex();
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the factorization is unique, then push the
  // residual determinant phase onto the first column.
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  Complex det = q.determinant();
  q.col(0) *= std::conj(det) / std::abs(det);
  return q;
}

Matrix3d RandomSource::rotation3() {
  MatrixXd g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(2) *= -1.0;
  return q;
}

}  // namespace isospec
