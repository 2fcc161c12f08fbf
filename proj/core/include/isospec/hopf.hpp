#pragma once

#include "isospec/types.hpp"

namespace isospec::geometry {

// The fixed coordinate realization of the Hopf projection, extended to all of
// R^4.  Maps the sphere of radius a to the sphere of radius a^2/2.
inline Vector3d hopf_P(const Vector4d& p) {
  const double a = p[0], b = p[1], c = p[2], d = p[3];
  return Vector3d(0.5 * (a * a + b * b - c * c - d * d), a * c + b * d, a * d - b * c);
}

// Exact directional derivative of hopf_P (polarization of the quadratic map,
// no finite differences).
inline Vector3d hopf_dP(const Vector4d& p, const Vector4d& X) {
  const double a = p[0], b = p[1], c = p[2], d = p[3];
  const double xa = X[0], xb = X[1], xc = X[2], xd = X[3];
  return Vector3d(a * xa + b * xb - c * xc - d * xd,
                  xa * c + a * xc + xb * d + b * xd,
                  xa * d + a * xd - xb * c - b * xc);
}

}  // namespace isospec::geometry
