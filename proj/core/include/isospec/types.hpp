#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace isospec {

using Complex = std::complex<double>;

using Eigen::Matrix2cd;
using Eigen::Matrix3d;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Error hierarchy shared by all modules.  Construction-time invariant
// violations and precondition failures throw; numerical verdicts (ok /
// not ok) are returned as values instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// conjugation_witness: eigenvalue lists differ beyond tolerance.
struct NotIsospectral : Error {
  using Error::Error;
};

// su2_lift: input is not a special-orthogonal 3x3 matrix.
struct NotARotation : Error {
  using Error::Error;
};

// tangent_frame at a point where the construction degenerates (|p| = 0 on a
// product surface, off-surface point, ...).
struct DegeneratePoint : Error {
  using Error::Error;
};

struct NonTangentVector : Error {
  using Error::Error;
};

// Quadrature symmetry order too small for the requested basis degree.
struct SymmetryViolation : Error {
  using Error::Error;
};

// verify_star / rayleigh_identity_check: the provided witness does not
// satisfy the conjugation relation within tolerance.
struct WitnessFailure : Error {
  using Error::Error;
};

struct MetadataMismatch : Error {
  using Error::Error;
};

}  // namespace isospec
