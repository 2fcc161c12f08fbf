#pragma once

#include <cstdint>
#include <random>

#include "isospec/types.hpp"

namespace isospec {

// Deterministic random source.  All randomness in the library flows through
// one of these; reports record the seed.  Gaussian and uniform variates are
// produced from the raw mt19937_64 stream directly rather than through
// std::*_distribution, whose output is implementation-defined.  The stream is
// therefore reproducible across standard libraries and platforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal (Box-Muller, both variates used).
  double gaussian();
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

  Complex gaussian_complex();

  // Uniform direction on the unit sphere of R^n.
  VectorXd unit_vector(int n);

  // Haar-ish random unitary with det = 1 (QR of a complex Gaussian matrix,
  // phases normalized).
  MatrixXcd special_unitary(int n);

  // Random rotation in SO(3).
  Matrix3d rotation3();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace isospec
