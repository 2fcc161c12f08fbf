#include "isospec/quadrature.hpp"

#include <cmath>

namespace isospec::spectral {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n over [-1, 1], then map to [0, 1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 + x);
    weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);  // already halved by the map
  }
}

QuadratureRule QuadratureRule::build(int m, const geometry::Surface& surface,
                                     const QuadratureOrders& orders) {
  if (m < 2) throw Error("QuadratureRule: m must be >= 2");
  if (orders.radial < 1 || orders.angular < 1)
    throw Error("QuadratureRule: orders must be positive");
  if (surface.kind == geometry::Surface::Kind::Product &&
      (!(surface.a > 0.0) || !(surface.b > 0.0)))
    throw Error("QuadratureRule: product surface needs a, b > 0");

  QuadratureRule rule;
  rule.m_ = m;
  rule.surface_ = surface;
  rule.orders_ = orders;

  std::vector<double> gl_x, gl_w;
  gauss_legendre_01(orders.radial, gl_x, gl_w);

  // Axis at nesting level k carries the folded measure s^{k-1}/2 ds.
  const int top_level = (surface.kind == geometry::Surface::Kind::Sphere) ? m : m - 1;
  for (int level = top_level; level >= 1; --level) {
    RadialAxis axis;
    axis.s = gl_x;
    axis.w.resize(gl_x.size());
    for (std::size_t i = 0; i < gl_x.size(); ++i)
      axis.w[i] = gl_w[i] * 0.5 * std::pow(gl_x[i], level - 1);
    rule.axes_.push_back(std::move(axis));
  }

  if (surface.kind == geometry::Surface::Kind::Product)
    rule.base_weight_ = std::pow(surface.a, 2 * m - 1) * surface.b;

  // Materialize the 2-torus orbit representatives: the last p-phase and the
  // q-phase pinned to zero, remaining phases free, weights scaled by K^2.
  const int K = orders.angular;
  const double phase_w = std::pow(2.0 * M_PI / K, m + 1);
  const int free_phases = m - 1;
  std::vector<int> ridx(rule.axes_.size(), 0);
  std::vector<int> aidx(free_phases, 0);
  const double k2 = static_cast<double>(K) * static_cast<double>(K);
  for (;;) {
    const std::vector<double> moduli = rule.moduli_for(ridx);
    const double rw = rule.radial_weight(ridx) * rule.base_weight_ * phase_w * k2;
    for (;;) {
      std::vector<double> phases(m + 1, 0.0);
      for (int j = 0; j < free_phases; ++j) phases[j] = 2.0 * M_PI * aidx[j] / K;
      rule.orbit_nodes_.push_back(rule.make_point(moduli, phases));
      rule.orbit_weights_.push_back(rw);
      int carry = 0;
      for (; carry < free_phases; ++carry) {
        if (++aidx[carry] < K) break;
        aidx[carry] = 0;
      }
      if (carry == free_phases) break;
    }
    int carry = 0;
    for (; carry < static_cast<int>(ridx.size()); ++carry) {
      if (++ridx[carry] < static_cast<int>(rule.axes_[carry].s.size())) break;
      ridx[carry] = 0;
    }
    if (carry == static_cast<int>(ridx.size())) break;
  }
  return rule;
}

std::vector<double> QuadratureRule::moduli_for(const std::vector<int>& radial_idx) const {
  std::vector<double> mod(m_ + 1, 0.0);
  if (surface_.kind == geometry::Surface::Kind::Sphere) {
    // axes_[0] splits C^m + C; axes_[i] splits inside the remaining C^{m-i}.
    double running = axes_[0].s[radial_idx[0]];
    mod[m_] = std::sqrt(1.0 - running);
    for (std::size_t i = 1; i < axes_.size(); ++i) {
      const double s = axes_[i].s[radial_idx[i]];
      mod[m_ - static_cast<int>(i)] = std::sqrt(running * (1.0 - s));
      running *= s;
    }
    mod[0] = std::sqrt(running);
  } else {
    mod[m_] = surface_.b;
    double running = 1.0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      const double s = axes_[i].s[radial_idx[i]];
      mod[m_ - 1 - static_cast<int>(i)] = surface_.a * std::sqrt(running * (1.0 - s));
      running *= s;
    }
    mod[0] = surface_.a * std::sqrt(running);
  }
  return mod;
}

double QuadratureRule::radial_weight(const std::vector<int>& radial_idx) const {
  double w = 1.0;
  for (std::size_t i = 0; i < axes_.size(); ++i) w *= axes_[i].w[radial_idx[i]];
  return w;
}

geometry::AmbientPoint QuadratureRule::make_point(const std::vector<double>& moduli,
                                                  const std::vector<double>& phases) const {
  VectorXd coords(2 * m_ + 2);
  for (int j = 0; j <= m_; ++j) {
    coords[2 * j] = moduli[j] * std::cos(phases[j]);
    coords[2 * j + 1] = moduli[j] * std::sin(phases[j]);
  }
  return geometry::AmbientPoint(m_, std::move(coords));
}

std::size_t QuadratureRule::node_count() const {
  std::size_t n = 1;
  for (const RadialAxis& axis : axes_) n *= axis.s.size();
  for (int j = 0; j <= m_; ++j) n *= static_cast<std::size_t>(orders_.angular);
  return n;
}

void QuadratureRule::for_each_node(
    const std::function<void(const geometry::AmbientPoint&, double)>& fn) const {
  const int K = orders_.angular;
  const double phase_w = std::pow(2.0 * M_PI / K, m_ + 1);
  std::vector<int> ridx(axes_.size(), 0);
  std::vector<int> aidx(m_ + 1, 0);
  for (;;) {
    const std::vector<double> moduli = moduli_for(ridx);
    const double rw = radial_weight(ridx) * base_weight_ * phase_w;
    for (;;) {
      std::vector<double> phases(m_ + 1, 0.0);
      for (int j = 0; j <= m_; ++j) phases[j] = 2.0 * M_PI * aidx[j] / K;
      fn(make_point(moduli, phases), rw);
      int carry = 0;
      for (; carry <= m_; ++carry) {
        if (++aidx[carry] < K) break;
        aidx[carry] = 0;
      }
      if (carry == m_ + 1) break;
    }
    int carry = 0;
    for (; carry < static_cast<int>(ridx.size()); ++carry) {
      if (++ridx[carry] < static_cast<int>(axes_[carry].s.size())) break;
      ridx[carry] = 0;
    }
    if (carry == static_cast<int>(ridx.size())) break;
  }
}

double QuadratureRule::integrate(
    const std::function<double(const geometry::AmbientPoint&)>& f) const {
  double acc = 0.0;
  for_each_node([&](const geometry::AmbientPoint& pt, double w) { acc += w * f(pt); });
  return acc;
}

Complex QuadratureRule::integrate_complex(
    const std::function<Complex(const geometry::AmbientPoint&)>& f) const {
  Complex acc = 0.0;
  for_each_node([&](const geometry::AmbientPoint& pt, double w) { acc += w * f(pt); });
  return acc;
}

double QuadratureRule::surface_volume() const {
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  if (surface_.kind == geometry::Surface::Kind::Sphere)
    return 2.0 * std::pow(M_PI, m_ + 1) / factorial(m_);
  const double vol_sm = 2.0 * std::pow(M_PI, m_) / factorial(m_ - 1);  // S^{2m-1}
  return std::pow(surface_.a, 2 * m_ - 1) * vol_sm * 2.0 * M_PI * surface_.b;
}

}  // namespace isospec::spectral
