#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "isospec/geometry.hpp"
#include "isospec/types.hpp"

namespace isospec::spectral {

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct QuadratureOrders {
  int radial = 4;   // Gauss points per radial axis
  int angular = 5;  // K: points per phase circle, also the torus symmetry order

  friend bool operator==(const QuadratureOrders&, const QuadratureOrders&) = default;
};

// Product rule in polyspherical coordinates: Gauss-Legendre in the nested
// radial angles (via s = sin^2 chi, which makes the folded measure
// polynomial) and uniform K-point circles in every phase.  The node set is
// exactly invariant under the discrete torus subgroup of order K x K, so
// integrals of fixed nonzero torus weight cancel to machine precision.
//
// Full nodes are enumerated on demand (for_each_node); the rule also carries
// the materialized set of 2-torus orbit representatives whose weights absorb
// the K^2 orbit size.  Summing a torus-invariant integrand over the orbit
// representatives equals the full sum exactly, which is what the Galerkin
// assembly uses.
class QuadratureRule {
 public:
  static QuadratureRule build(int m, const geometry::Surface& surface,
                              const QuadratureOrders& orders);

  int m() const { return m_; }
  const geometry::Surface& surface() const { return surface_; }
  const QuadratureOrders& orders() const { return orders_; }
  int symmetry_order() const { return orders_.angular; }

  std::size_t node_count() const;
  void for_each_node(
      const std::function<void(const geometry::AmbientPoint&, double)>& fn) const;

  const std::vector<geometry::AmbientPoint>& orbit_nodes() const { return orbit_nodes_; }
  const std::vector<double>& orbit_weights() const { return orbit_weights_; }

  // Integral over the full node set.
  double integrate(const std::function<double(const geometry::AmbientPoint&)>& f) const;
  Complex integrate_complex(
      const std::function<Complex(const geometry::AmbientPoint&)>& f) const;

  // Closed-form volume of the surface (the exact sum of the weights).
  double surface_volume() const;

 private:
  struct RadialAxis {
    std::vector<double> s;  // sin^2 of the nested angle
    std::vector<double> w;  // Gauss weight with the s^{level-1}/2 factor folded in
  };

  int m_ = 0;
  geometry::Surface surface_;
  QuadratureOrders orders_;
  std::vector<RadialAxis> axes_;  // outermost split first
  double base_weight_ = 1.0;      // radius factors for product surfaces
  std::vector<geometry::AmbientPoint> orbit_nodes_;
  std::vector<double> orbit_weights_;

  std::vector<double> moduli_for(const std::vector<int>& radial_idx) const;
  double radial_weight(const std::vector<int>& radial_idx) const;
  geometry::AmbientPoint make_point(const std::vector<double>& moduli,
                                    const std::vector<double>& phases) const;
};

}  // namespace isospec::spectral
