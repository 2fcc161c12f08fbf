#include "isospec/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace isospec::geometry {

namespace {

constexpr double kTangencyTol = 1e-8;

Vector4d p_as_vec4(const VectorXd& v) {
  return Vector4d(v[0], v[1], v[2], v[3]);
}

double mollifier(double w) {
  // exp(1 - 1/(1-w^2)) on |w| < 1, exactly zero outside; peak value 1 at 0.
  if (!(std::abs(w) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - w * w));
}

}  // namespace

bool on_sphere(const AmbientPoint& pt, double tol) {
  return std::abs(pt.coords.squaredNorm() - 1.0) <= tol;
}

bool on_product(const AmbientPoint& pt, double a, double b, double tol) {
  return std::abs(std::sqrt(pt.p_norm2()) - a) <= tol &&
         std::abs(std::sqrt(pt.q_norm2()) - b) <= tol;
}

bool on_surface(const AmbientPoint& pt, const Surface& surface, double tol) {
  return surface.kind == Surface::Kind::Sphere ? on_sphere(pt, tol)
                                               : on_product(pt, surface.a, surface.b, tol);
}

VectorXd mul_i(const VectorXd& v) {
  VectorXd out(v.size());
  for (int j = 0; j + 1 < v.size(); j += 2) {
    out[j] = -v[j + 1];
    out[j + 1] = v[j];
  }
  return out;
}

VectorXd apply_p_matrix(const MatrixXcd& J, const VectorXd& v, int m) {
  VectorXcd z(m);
  for (int j = 0; j < m; ++j) z[j] = Complex(v[2 * j], v[2 * j + 1]);
  const VectorXcd w = J * z;
  VectorXd out = VectorXd::Zero(2 * m + 2);
  for (int j = 0; j < m; ++j) {
    out[2 * j] = w[j].real();
    out[2 * j + 1] = w[j].imag();
  }
  return out;
}

AmbientPoint torus_act(double a, double b, const AmbientPoint& pt) {
  AmbientPoint out = pt;
  const Complex ea = std::polar(1.0, a);
  const Complex eb = std::polar(1.0, b);
  for (int j = 0; j < pt.m; ++j) out.set_z(j, ea * pt.z(j));
  out.set_z(pt.m, eb * pt.q());
  return out;
}

VectorXd torus_push(double a, double b, const VectorXd& v, int m) {
  VectorXd out(v.size());
  const Complex ea = std::polar(1.0, a);
  const Complex eb = std::polar(1.0, b);
  for (int j = 0; j <= m; ++j) {
    const Complex w = (j < m ? ea : eb) * Complex(v[2 * j], v[2 * j + 1]);
    out[2 * j] = w.real();
    out[2 * j + 1] = w.imag();
  }
  return out;
}

TangentVector vertical_field(const Vector2d& z, const AmbientPoint& pt) {
  VectorXd v(pt.ambient_dim());
  for (int j = 0; j <= pt.m; ++j) {
    const double zk = (j < pt.m) ? z[0] : z[1];
    const Complex w = Complex(0.0, zk) * pt.z(j);
    v[2 * j] = w.real();
    v[2 * j + 1] = w.imag();
  }
  return TangentVector{pt, std::move(v)};
}

double bump_eval(const BumpProfile& profile, const AmbientPoint& pt) {
  const double w1 = (pt.p_norm2() - profile.center[0]) / profile.radii[0];
  const double w2 = (pt.q_norm2() - profile.center[1]) / profile.radii[1];
  const double b1 = mollifier(w1);
  if (b1 == 0.0) return 0.0;
  const double b2 = mollifier(w2);
  if (b2 == 0.0) return 0.0;
  return profile.amplitude * b1 * b2;
}

bool bump_support_meets_sphere(const BumpProfile& profile) {
  // The sphere realizes (s, u) = (|p|^2, |q|^2) on {s + u = 1, 0 <= s <= 1}.
  const double lo = std::max({0.0, profile.center[0] - profile.radii[0],
                              1.0 - profile.center[1] - profile.radii[1]});
  const double hi = std::min({1.0, profile.center[0] + profile.radii[0],
                              1.0 - profile.center[1] + profile.radii[1]});
  return lo < hi;
}

AdmissibleForm AdmissibleForm::su(algebra::SkewMapPair pair) {
  AdmissibleForm f;
  f.kind_ = Kind::Su;
  f.m_ = pair.m;
  f.su_ = std::move(pair);
  return f;
}

AdmissibleForm AdmissibleForm::sym(algebra::SymMapPair pair) {
  AdmissibleForm f;
  f.kind_ = Kind::Sym;
  f.m_ = 2;
  f.sym_ = std::move(pair);
  return f;
}

AdmissibleForm AdmissibleForm::with_bump(const BumpProfile& profile) const {
  if (!(profile.radii[0] > 0.0) || !(profile.radii[1] > 0.0))
    throw Error("BumpProfile: radii must be positive");
  AdmissibleForm f = *this;
  f.bump_ = profile;
  return f;
}

AdmissibleForm AdmissibleForm::without_bump() const {
  AdmissibleForm f = *this;
  f.bump_.reset();
  return f;
}

const algebra::SkewMapPair& AdmissibleForm::su_pair() const {
  if (kind_ != Kind::Su) throw Error("AdmissibleForm: not an su-type form");
  return su_;
}

const algebra::SymMapPair& AdmissibleForm::sym_pair() const {
  if (kind_ != Kind::Sym) throw Error("AdmissibleForm: not a sym-type form");
  return sym_;
}

MatrixXcd AdmissibleForm::contracted(const Vector2d& z) const {
  if (kind_ == Kind::Su) return z[0] * su_.J1 + z[1] * su_.J2;
  return (z[0] * sym_.C1 + z[1] * sym_.C2).cast<Complex>();
}

Vector2d eval_form(const AdmissibleForm& form, const TangentVector& v) {
  const AmbientPoint& pt = v.base;
  Vector2d lam;
  if (form.kind() == AdmissibleForm::Kind::Su) {
    const int m = form.m();
    const VectorXd p = [&] {
      VectorXd full = VectorXd::Zero(pt.ambient_dim());
      full.head(2 * m) = pt.coords.head(2 * m);
      return full;
    }();
    const VectorXd ip = mul_i(p);
    const double pn2 = pt.p_norm2();
    VectorXd xp = VectorXd::Zero(pt.ambient_dim());
    xp.head(2 * m) = v.v.head(2 * m);
    const double x_ip = xp.dot(ip);
    const algebra::SkewMapPair& pair = form.su_pair();
    for (int k = 0; k < 2; ++k) {
      const VectorXd jp = apply_p_matrix(k == 0 ? pair.J1 : pair.J2, p, m);
      lam[k] = pn2 * jp.dot(xp) - x_ip * jp.dot(ip);
    }
  } else {
    const Vector4d p4 = p_as_vec4(pt.coords);
    const Vector4d x4 = p_as_vec4(v.v);
    const Vector3d P = hopf_P(p4);
    const Vector3d dP = hopf_dP(p4, x4);
    const algebra::SymMapPair& pair = form.sym_pair();
    lam[0] = (pair.C1 * P).cross(P).dot(dP);
    lam[1] = (pair.C2 * P).cross(P).dot(dP);
  }
  if (form.bump()) lam *= bump_eval(*form.bump(), pt);
  return lam;
}

std::vector<VectorXd> tangent_frame(const AmbientPoint& pt, const Surface& surface) {
  const int n = pt.ambient_dim();
  const int d = surface.tangent_dim(pt.m);
  if (!on_surface(pt, surface, 1e-9))
    throw DegeneratePoint("tangent_frame: point is not on the surface");

  // Unit normals of the constraint set.
  std::vector<VectorXd> normals;
  if (surface.kind == Surface::Kind::Sphere) {
    normals.push_back(pt.coords.normalized());
  } else {
    if (!(surface.a > 0.0) || !(surface.b > 0.0))
      throw DegeneratePoint("tangent_frame: product surface needs a, b > 0");
    VectorXd np = VectorXd::Zero(n);
    np.head(2 * pt.m) = pt.coords.head(2 * pt.m);
    VectorXd nq = VectorXd::Zero(n);
    nq.tail(2) = pt.coords.tail(2);
    normals.push_back(np.normalized());
    normals.push_back(nq.normalized());
  }

  std::vector<VectorXd> candidates(n);
  for (int i = 0; i < n; ++i) {
    VectorXd c = VectorXd::Zero(n);
    c[i] = 1.0;
    for (const VectorXd& nu : normals) c -= nu.dot(c) * nu;
    candidates[i] = std::move(c);
  }

  std::vector<VectorXd> frame;
  std::vector<bool> used(n, false);
  frame.reserve(d);
  for (int step = 0; step < d; ++step) {
    int best = -1;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double nn = candidates[i].norm();
      if (nn > best_norm + 1e-14) {
        best_norm = nn;
        best = i;
      }
    }
    if (best < 0 || best_norm < 1e-10)
      throw DegeneratePoint("tangent_frame: Gram-Schmidt ran out of directions");
    used[best] = true;
    const VectorXd e = candidates[best] / best_norm;
    frame.push_back(e);
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      candidates[i] -= e.dot(candidates[i]) * e;
    }
  }
  return frame;
}

MetricSample metric_gram(const AdmissibleForm& form, const AmbientPoint& pt,
                         const std::vector<VectorXd>& frame) {
  const int d = static_cast<int>(frame.size());
  // Tangency to the sphere through pt (the weakest requirement shared by the
  // sphere and product cases; vertical vectors satisfy it componentwise).
  for (const VectorXd& f : frame) {
    if (std::abs(f.dot(pt.coords)) > kTangencyTol * std::max(1.0, f.norm()))
      throw NonTangentVector("metric_gram: frame vector is not tangent");
  }
  std::vector<VectorXd> shifted(frame.size());
  for (int i = 0; i < d; ++i) {
    const Vector2d lam = eval_form(form, TangentVector{pt, frame[i]});
    shifted[i] = frame[i] + vertical_field(lam, pt).v;
  }
  MetricSample sample;
  sample.base = pt;
  sample.frame = frame;
  sample.gram.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double g = shifted[i].dot(shifted[j]);
      sample.gram(i, j) = g;
      sample.gram(j, i) = g;
    }
  return sample;
}

namespace {

// Raw closed-form value before explicit antisymmetrization.
Vector2d dlambda_raw(const AdmissibleForm& form, const AmbientPoint& pt,
                     const VectorXd& X, const VectorXd& Y) {
  Vector2d out;
  if (form.kind() == AdmissibleForm::Kind::Su) {
    const int m = form.m();
    VectorXd p = VectorXd::Zero(pt.ambient_dim());
    p.head(2 * m) = pt.coords.head(2 * m);
    const VectorXd ip = mul_i(p);
    const double a2 = pt.p_norm2();
    VectorXd xp = VectorXd::Zero(pt.ambient_dim());
    xp.head(2 * m) = X.head(2 * m);
    VectorXd yp = VectorXd::Zero(pt.ambient_dim());
    yp.head(2 * m) = Y.head(2 * m);
    const VectorXd xh = xp - (xp.dot(ip) / a2) * ip;
    const VectorXd yh = yp - (yp.dot(ip) / a2) * ip;
    const double ix_y = mul_i(xp).dot(yp);
    const algebra::SkewMapPair& pair = form.su_pair();
    for (int k = 0; k < 2; ++k) {
      const MatrixXcd& J = (k == 0) ? pair.J1 : pair.J2;
      const VectorXd jxh = apply_p_matrix(J, xh, m);
      const VectorXd jp = apply_p_matrix(J, p, m);
      out[k] = 2.0 * a2 * jxh.dot(yh) - 2.0 * jp.dot(ip) * ix_y;
    }
  } else {
    const Vector4d p4 = p_as_vec4(pt.coords);
    const Vector4d x4 = p_as_vec4(X);
    const Vector4d y4 = p_as_vec4(Y);
    const Vector3d P = hopf_P(p4);
    const Vector3d dPX = hopf_dP(p4, x4);
    const Vector3d dPY = hopf_dP(p4, y4);
    const algebra::SymMapPair& pair = form.sym_pair();
    // Quotient 2-form 3 a^3 <c_k x x X, Y> pulled back through x = P(p)/a;
    // the radius factors cancel against P = a * pi.
    out[0] = 3.0 * (pair.C1 * P).cross(dPX).dot(dPY);
    out[1] = 3.0 * (pair.C2 * P).cross(dPX).dot(dPY);
  }
  return out;
}

}  // namespace

Vector2d curvature_dlambda(const AdmissibleForm& form, const AmbientPoint& pt,
                           const VectorXd& X, const VectorXd& Y) {
  if (form.bump()) throw Error("curvature_dlambda: bump-scaled forms not supported");
  const double a = std::sqrt(pt.p_norm2());
  const double b = std::sqrt(pt.q_norm2());
  if (!(a > 1e-12) || !(b > 1e-12))
    throw DegeneratePoint("curvature_dlambda: point must lie on M_{a,b} with a, b > 0");
  for (const VectorXd* w : {&X, &Y}) {
    if (std::abs(w->head(2 * pt.m).dot(pt.coords.head(2 * pt.m))) > kTangencyTol ||
        std::abs(w->tail(2).dot(pt.coords.tail(2))) > kTangencyTol)
      throw NonTangentVector("curvature_dlambda: vector not tangent to M_{a,b}");
  }
  // Antisymmetrized so value(X, Y) == -value(Y, X) holds exactly.
  return 0.5 * (dlambda_raw(form, pt, X, Y) - dlambda_raw(form, pt, Y, X));
}

Vector2d connection_form_0(const AmbientPoint& pt, const VectorXd& v) {
  const double a2 = pt.p_norm2();
  const double b2 = pt.q_norm2();
  if (!(a2 > 1e-24) || !(b2 > 1e-24))
    throw DegeneratePoint("connection_form_0: requires a, b > 0");
  const VectorXd ipt = mul_i(pt.coords);
  const double w1 = v.head(2 * pt.m).dot(ipt.head(2 * pt.m)) / a2;
  const double w2 = v.tail(2).dot(ipt.tail(2)) / b2;
  return Vector2d(w1, w2);
}

}  // namespace isospec::geometry
