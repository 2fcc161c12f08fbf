#include "isospec/verify.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "isospec/report.hpp"

namespace isospec::spectral {

namespace {

constexpr double kRelationTol = 1e-8;

// (p, q) -> (A p, q) on interleaved real coordinates.
VectorXd apply_p_block(const MatrixXcd& A, const VectorXd& v, int m) {
  VectorXd out = v;
  VectorXcd z(m);
  for (int j = 0; j < m; ++j) z[j] = Complex(v[2 * j], v[2 * j + 1]);
  const VectorXcd w = A * z;
  for (int j = 0; j < m; ++j) {
    out[2 * j] = w[j].real();
    out[2 * j + 1] = w[j].imag();
  }
  return out;
}

MatrixXcd contracted_su(const algebra::SkewMapPair& pair, const algebra::TorusWeight& mu) {
  return static_cast<double>(mu.m1) * pair.J1 + static_cast<double>(mu.m2) * pair.J2;
}

Matrix3d contracted_sym(const algebra::SymMapPair& pair, const algebra::TorusWeight& mu) {
  return static_cast<double>(mu.m1) * pair.C1 + static_cast<double>(mu.m2) * pair.C2;
}

void check_relation(const geometry::AdmissibleForm& form_a,
                    const geometry::AdmissibleForm& form_b, const algebra::TorusWeight& mu,
                    const StarWitness& w) {
  if (mu.is_zero()) return;
  double res = 0.0;
  if (form_a.kind() == geometry::AdmissibleForm::Kind::Su) {
    const MatrixXcd jz = contracted_su(form_a.su_pair(), mu);
    const MatrixXcd jzp = contracted_su(form_b.su_pair(), mu);
    res = (w.A * jz * w.A.adjoint() - jzp).cwiseAbs().maxCoeff();
  } else {
    if (!w.E) throw WitnessFailure("verify_star: sym-type witness must carry E");
    const Matrix3d cz = contracted_sym(form_a.sym_pair(), mu);
    const Matrix3d czp = contracted_sym(form_b.sym_pair(), mu);
    res = (*w.E * cz * w.E->transpose() - czp).cwiseAbs().maxCoeff();
  }
  if (res > kRelationTol)
    throw WitnessFailure("verify_star: witness conjugation residual " +
                         format_double(res) + " exceeds tolerance");
}

void check_compatible(const geometry::AdmissibleForm& a, const geometry::AdmissibleForm& b) {
  if (a.kind() != b.kind() || a.m() != b.m())
    throw DimensionMismatch("forms have different kind or dimension");
}

}  // namespace

WitnessProvider make_witness_provider(const geometry::AdmissibleForm& form_a,
                                      const geometry::AdmissibleForm& form_b) {
  check_compatible(form_a, form_b);
  const auto kind = form_a.kind();
  const int m = form_a.m();
  if (kind == geometry::AdmissibleForm::Kind::Su) {
    const algebra::SkewMapPair pa = form_a.su_pair();
    const algebra::SkewMapPair pb = form_b.su_pair();
    return [pa, pb, m](const algebra::TorusWeight& mu) {
      StarWitness w;
      if (mu.is_zero()) {
        w.A = MatrixXcd::Identity(m, m);
        return w;
      }
      const algebra::ConjugationWitness cw = algebra::conjugation_witness(
          contracted_su(pa, mu), contracted_su(pb, mu), algebra::ConjugationKind::Su);
      w.A = cw.A;
      w.relation_residual = cw.residual;
      return w;
    };
  }
  const algebra::SymMapPair pa = form_a.sym_pair();
  const algebra::SymMapPair pb = form_b.sym_pair();
  return [pa, pb](const algebra::TorusWeight& mu) {
    StarWitness w;
    if (mu.is_zero()) {
      w.A = MatrixXcd::Identity(2, 2);
      return w;
    }
    const algebra::ConjugationWitness cw = algebra::conjugation_witness(
        contracted_sym(pa, mu).cast<Complex>(), contracted_sym(pb, mu).cast<Complex>(),
        algebra::ConjugationKind::Sym);
    const Matrix3d E = cw.A.real();
    w.A = algebra::su2_lift(E);
    w.E = E;
    w.relation_residual = cw.residual;
    return w;
  };
}

geometry::AmbientPoint random_surface_point(int m, const geometry::Surface& surface,
                                            RandomSource& rng) {
  if (surface.kind == geometry::Surface::Kind::Sphere)
    return geometry::AmbientPoint(m, rng.unit_vector(2 * m + 2));
  VectorXd coords(2 * m + 2);
  coords.head(2 * m) = surface.a * rng.unit_vector(2 * m);
  coords.tail(2) = surface.b * rng.unit_vector(2);
  return geometry::AmbientPoint(m, std::move(coords));
}

VectorXd random_tangent(const geometry::AmbientPoint& pt, const geometry::Surface& surface,
                        RandomSource& rng) {
  const int n = pt.ambient_dim();
  for (;;) {
    VectorXd v = rng.unit_vector(n);
    if (surface.kind == geometry::Surface::Kind::Sphere) {
      v -= v.dot(pt.coords) * pt.coords;
    } else {
      VectorXd np = VectorXd::Zero(n);
      np.head(2 * pt.m) = pt.coords.head(2 * pt.m).normalized();
      VectorXd nq = VectorXd::Zero(n);
      nq.tail(2) = pt.coords.tail(2).normalized();
      v -= v.dot(np) * np;
      v -= v.dot(nq) * nq;
    }
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

double verify_star(const geometry::AdmissibleForm& form_a,
                   const geometry::AdmissibleForm& form_b, const algebra::TorusWeight& mu,
                   const WitnessProvider& witness, int sample_count, RandomSource& rng) {
  check_compatible(form_a, form_b);
  if (mu.is_zero()) return 0.0;  // mu . lambda vanishes identically
  const StarWitness w = witness(mu);
  check_relation(form_a, form_b, mu, w);

  const int m = form_a.m();
  const geometry::Surface sphere = geometry::Surface::sphere();
  const Vector2d muv = algebra::dual_vector(mu);
  double max_residual = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const geometry::AmbientPoint pt = random_surface_point(m, sphere, rng);
    const VectorXd v = random_tangent(pt, sphere, rng);
    const Vector2d lam_a = geometry::eval_form(form_a, geometry::TangentVector{pt, v});

    geometry::AmbientPoint pt_f(m, apply_p_block(w.A, pt.coords, m));
    const VectorXd v_f = apply_p_block(w.A, v, m);
    const Vector2d lam_b = geometry::eval_form(form_b, geometry::TangentVector{pt_f, v_f});

    max_residual = std::max(max_residual, std::abs(muv.dot(lam_a) - muv.dot(lam_b)));
  }
  return max_residual;
}

double metric_gradient_norm(const geometry::AdmissibleForm& form,
                            const geometry::AmbientPoint& pt,
                            const geometry::Surface& surface,
                            const std::vector<Complex>& wirtinger,
                            const MatrixXcd* pullback) {
  const std::vector<VectorXd> frame = geometry::tangent_frame(pt, surface);
  const geometry::MetricSample ms = geometry::metric_gram(form, pt, frame);
  const int d = static_cast<int>(frame.size());
  VectorXd re(d), im(d);
  for (int k = 0; k < d; ++k) {
    const VectorXd dir =
        pullback ? apply_p_block(*pullback, frame[k], pt.m) : frame[k];
    const Complex c = directional_from_wirtinger(wirtinger, dir, pt.m);
    re[k] = c.real();
    im[k] = c.imag();
  }
  const Eigen::LLT<MatrixXd> llt(ms.gram);
  const double norm2 = re.dot(llt.solve(re)) + im.dot(llt.solve(im));
  return std::sqrt(std::max(0.0, norm2));
}

double rayleigh_identity_check(const geometry::AdmissibleForm& form_a,
                               const geometry::AdmissibleForm& form_b,
                               const algebra::TorusWeight& mu, const WitnessProvider& witness,
                               const std::vector<WeightPolynomial>& test_polynomials,
                               int point_count, RandomSource& rng) {
  check_compatible(form_a, form_b);
  for (const WeightPolynomial& poly : test_polynomials) {
    if (poly.m != form_a.m())
      throw DimensionMismatch("rayleigh_identity_check: polynomial dimension differs");
    if (!(poly.weight == mu))
      throw Error("rayleigh_identity_check: polynomial weight differs from mu");
    for (const BasisEntry& term : poly.terms)
      if (!(term.weight() == mu))
        throw Error("rayleigh_identity_check: mixed-weight test polynomial");
  }
  const int m = form_a.m();
  StarWitness w;
  if (mu.is_zero()) {
    w.A = MatrixXcd::Identity(m, m);
  } else {
    w = witness(mu);
    check_relation(form_a, form_b, mu, w);
  }

  const geometry::Surface sphere = geometry::Surface::sphere();
  double max_residual = 0.0;
  for (const WeightPolynomial& poly : test_polynomials) {
    for (int s = 0; s < point_count; ++s) {
      const geometry::AmbientPoint x = random_surface_point(m, sphere, rng);
      const geometry::AmbientPoint y(m, apply_p_block(w.A, x.coords, m));
      const std::vector<Complex> dpsi_y = poly.gradient_at(y);
      // d(psi o F)|_x (v) = d psi|_{F x}(F v)
      const double norm_a = metric_gradient_norm(form_a, x, sphere, dpsi_y, &w.A);
      const double norm_b = metric_gradient_norm(form_b, y, sphere, dpsi_y, nullptr);
      max_residual = std::max(max_residual, std::abs(norm_a - norm_b));
    }
  }
  return max_residual;
}

std::optional<WeightPolynomial> random_weight_polynomial(int m, int N,
                                                         const algebra::TorusWeight& mu,
                                                         RandomSource& rng) {
  const MonomialBasis basis = MonomialBasis::build(m, N);
  WeightPolynomial poly;
  poly.m = m;
  poly.weight = mu;
  for (const BasisEntry& e : basis.entries)
    if (e.weight() == mu) poly.terms.push_back(e);
  if (poly.terms.empty()) return std::nullopt;
  poly.coeffs.resize(poly.terms.size());
  double norm2 = 0.0;
  for (Complex& c : poly.coeffs) {
    c = rng.gaussian_complex();
    norm2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& c : poly.coeffs) c *= inv;
  return poly;
}

}  // namespace isospec::spectral
