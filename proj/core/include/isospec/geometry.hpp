#pragma once

#include <optional>
#include <vector>

#include "isospec/algebra.hpp"
#include "isospec/hopf.hpp"
#include "isospec/types.hpp"

namespace isospec::geometry {

// Surface a point or frame lives on: the unit sphere S^{2m+1} or a product
// M_{a,b} = S^{2m-1}_a x S^1_b inside C^m + C.
struct Surface {
  enum class Kind { Sphere, Product };

  Kind kind = Kind::Sphere;
  double a = 0.0;
  double b = 0.0;

  static Surface sphere() { return Surface{Kind::Sphere, 0.0, 0.0}; }
  static Surface product(double a, double b) { return Surface{Kind::Product, a, b}; }

  // Tangent dimension: 2m+1 on the sphere, 2m on the product.
  int tangent_dim(int m) const { return kind == Kind::Sphere ? 2 * m + 1 : 2 * m; }

  const char* name() const { return kind == Kind::Sphere ? "sphere" : "product"; }

  friend bool operator==(const Surface&, const Surface&) = default;
};

// A point of R^{2m+2} ~ C^m + C.  Real coordinates are interleaved
// (Re z_0, Im z_0, ..., Re z_m, Im z_m); z_m is the q slot.
struct AmbientPoint {
  int m = 0;
  VectorXd coords;

  AmbientPoint() = default;
  AmbientPoint(int m_, VectorXd c) : m(m_), coords(std::move(c)) {}

  int ambient_dim() const { return 2 * m + 2; }
  Complex z(int j) const { return Complex(coords[2 * j], coords[2 * j + 1]); }
  void set_z(int j, Complex v) {
    coords[2 * j] = v.real();
    coords[2 * j + 1] = v.imag();
  }
  Complex q() const { return z(m); }

  double p_norm2() const { return coords.head(2 * m).squaredNorm(); }
  double q_norm2() const { return coords.tail(2).squaredNorm(); }
};

// Checks |p|^2 + |q|^2 = 1, resp. |p| = a and |q| = b, within tol.
bool on_sphere(const AmbientPoint& pt, double tol = 1e-12);
bool on_product(const AmbientPoint& pt, double a, double b, double tol = 1e-12);
bool on_surface(const AmbientPoint& pt, const Surface& surface, double tol = 1e-12);

struct TangentVector {
  AmbientPoint base;
  VectorXd v;
};

// Multiplication by i on the interleaved real coordinates, blockwise.
VectorXd mul_i(const VectorXd& v);
// Applies an m x m complex matrix to the p block (first 2m reals); the q
// block of the result is zero.
VectorXd apply_p_matrix(const MatrixXcd& J, const VectorXd& v, int m);

// exp(a Z1 + b Z2): (p, q) -> (e^{ia} p, e^{ib} q).
AmbientPoint torus_act(double a, double b, const AmbientPoint& pt);
// Pushforward of a tangent vector under the same torus element.
VectorXd torus_push(double a, double b, const VectorXd& v, int m);

// The vertical field Z* of z = (z1, z2): (i z1 p, i z2 q) at pt.
TangentVector vertical_field(const Vector2d& z, const AmbientPoint& pt);

// Smooth compactly supported profile phi on [0,1]^2 evaluated at
// (|p|^2, |q|^2); a separable mollifier scaled so the center value equals
// `amplitude` and the value is exactly zero outside center +- radii.
struct BumpProfile {
  Vector2d center;
  Vector2d radii;
  double amplitude = 1.0;
};

double bump_eval(const BumpProfile& profile, const AmbientPoint& pt);
// On the sphere (|p|^2, |q|^2) ranges over the segment s + u = 1; the support
// rectangle must meet it for the profile to act at all.
bool bump_support_meets_sphere(const BumpProfile& profile);

// An admissible h-valued 1-form: T-invariant, horizontal.  Either the
// su(m)-type form (m >= 2) or the Sym_0(R^3)-type form through the Hopf
// projection (m = 2), optionally scaled by a bump function.
class AdmissibleForm {
 public:
  enum class Kind { Su, Sym };

  static AdmissibleForm su(algebra::SkewMapPair pair);
  static AdmissibleForm sym(algebra::SymMapPair pair);

  AdmissibleForm with_bump(const BumpProfile& profile) const;
  AdmissibleForm without_bump() const;

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  const algebra::SkewMapPair& su_pair() const;
  const algebra::SymMapPair& sym_pair() const;
  const std::optional<BumpProfile>& bump() const { return bump_; }

  // Component matrices contracted with a Lie-algebra vector: z1 M1 + z2 M2,
  // returned as a complex matrix of the acting size (m x m or 3 x 3).
  MatrixXcd contracted(const Vector2d& z) const;

 private:
  AdmissibleForm() = default;
  Kind kind_ = Kind::Su;
  int m_ = 0;
  algebra::SkewMapPair su_;
  algebra::SymMapPair sym_;
  std::optional<BumpProfile> bump_;
};

// (lambda^1, lambda^2) evaluated on a tangent vector; bump-scaled when the
// form carries a profile.  Total on ambient data (formulas extend to R^{2m+2}).
Vector2d eval_form(const AdmissibleForm& form, const TangentVector& v);

// Deterministic orthonormal tangent frame at pt: ambient basis vectors
// projected to the tangent space, Gram-Schmidt with largest-norm pivoting,
// ties broken by index.
std::vector<VectorXd> tangent_frame(const AmbientPoint& pt, const Surface& surface);

struct MetricSample {
  AmbientPoint base;
  std::vector<VectorXd> frame;
  MatrixXd gram;
};

// Gram matrix of g_lambda in the given tangent frame:
// gram(i,j) = <F_i + lambda(F_i)*, F_j + lambda(F_j)*>.
MetricSample metric_gram(const AdmissibleForm& form, const AmbientPoint& pt,
                         const std::vector<VectorXd>& frame);

// Closed-form exterior derivative (d lambda^1, d lambda^2)(X, Y) on M_{a,b}.
// For Sym-type forms the value is the quotient 2-form pulled back through
// x = P(p)/a.  The form must be unbumped; X, Y tangent to M_{a,b}.
Vector2d curvature_dlambda(const AdmissibleForm& form, const AmbientPoint& pt,
                           const VectorXd& X, const VectorXd& Y);

// Connection form of the round metric on M_{a,b}:
// (<X, ip>/a^2, <U, iq>/b^2) for v = (X, U).
Vector2d connection_form_0(const AmbientPoint& pt, const VectorXd& v);

}  // namespace isospec::geometry
