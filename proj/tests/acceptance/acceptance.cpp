// Acceptance runner: executes the ten headline checks end to end and prints
// one PASS/FAIL line per criterion.  Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "isospec/algebra.hpp"
#include "isospec/assembly.hpp"
#include "isospec/geometry.hpp"
#include "isospec/quadrature.hpp"
#include "isospec/report.hpp"
#include "isospec/rng.hpp"
#include "isospec/verify.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace isospec;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 42;
int failures = 0;

void report(int index, const char* title, bool ok, const std::string& detail, double seconds) {
  std::printf("%s criterion %d: %s (%s; %.2f s)\n", ok ? "PASS" : "FAIL", index, title,
              detail.c_str(), seconds);
  if (!ok) ++failures;
}

template <typename Fn>
void run(int index, const char* title, Fn&& fn) {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = fn();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  report(index, title, ok, detail, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::vector<double> chebyshev(int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = std::cos((2.0 * k + 1.0) * M_PI / (2.0 * n));
  return x;
}

// ---- criterion 1: the su(3) family ----------------------------------------
std::pair<bool, std::string> criterion1() {
  const auto grid = chebyshev(4);
  double worst_coeff = 0.0, worst_inv = 0.0;
  bool generic_pattern = true;
  for (int k = 0; k <= 20; ++k) {
    const double t = k * M_PI / 20.0;
    const auto pair = algebra::family_j(t);
    for (double s : grid)
      for (double u : grid) {
        const auto coeff = algebra::char_poly_at(pair, s, u);
        worst_coeff = std::max({worst_coeff, std::abs(coeff[0] - Complex(1, 0)),
                                std::abs(coeff[1]),
                                std::abs(coeff[2] - Complex(s * s + 2 * u * u, 0)),
                                std::abs(coeff[3])});
      }
    worst_inv = std::max(worst_inv, std::abs(algebra::equivalence_invariant(pair) -
                                             (14.0 + 4.0 * std::sin(t) * std::sin(t))));
    const bool generic = algebra::commutant_dimension(pair) == 0;
    const bool expected = k != 10;  // cos t = 0 exactly at t = pi/2
    generic_pattern = generic_pattern && generic == expected;
  }
  std::ostringstream os;
  os << "coeff gap " << worst_coeff << ", invariant gap " << worst_inv << ", genericity flip "
     << (generic_pattern ? "correct" : "wrong");
  return {worst_coeff <= 1e-12 && worst_inv <= 1e-10 && generic_pattern, os.str()};
}

// ---- criterion 2: the Sym_0(R^3) pair --------------------------------------
std::pair<bool, std::string> criterion2() {
  const auto [c, cp] = algebra::pair_c();
  const auto cert = algebra::check_isospectral(c, cp, 16, 1e-12);
  const double inv_c = algebra::equivalence_invariant(c);
  const double inv_cp = algebra::equivalence_invariant(cp);
  const int dim_c = algebra::commutant_dimension(c);
  const int dim_cp = algebra::commutant_dimension(cp);
  const bool ok = cert.ok && std::abs(inv_c - 14.0) <= 1e-10 &&
                  std::abs(inv_cp - 18.0) <= 1e-10 && dim_c == 0 && dim_cp == 0;
  std::ostringstream os;
  os << "coeff gap " << cert.max_coeff_gap << ", invariants " << inv_c << "/" << inv_cp
     << ", commutants " << dim_c << "/" << dim_cp;
  return {ok, os.str()};
}

// ---- criterion 3: condition (*) over the weight box ------------------------
std::pair<bool, std::string> criterion3() {
  RandomSource rng(kSeed);
  double worst = 0.0;
  const auto run_box = [&](const geometry::AdmissibleForm& fa,
                           const geometry::AdmissibleForm& fb) {
    const auto witness = spectral::make_witness_provider(fa, fb);
    for (int m1 = -5; m1 <= 5; ++m1)
      for (int m2 = -5; m2 <= 5; ++m2)
        worst = std::max(worst, spectral::verify_star(fa, fb, {m1, m2}, witness, 1000, rng));
  };
  const auto [c, cp] = algebra::pair_c();
  run_box(geometry::AdmissibleForm::sym(c), geometry::AdmissibleForm::sym(cp));
  run_box(geometry::AdmissibleForm::su(algebra::family_j(0.0)),
          geometry::AdmissibleForm::su(algebra::family_j(0.5)));
  std::ostringstream os;
  os << "max residual " << worst << " over 121 weights x 1000 samples x 2 pairs";
  return {worst <= 1e-9, os.str()};
}

// ---- criterion 4: Rayleigh-quotient identity --------------------------------
std::pair<bool, std::string> criterion4() {
  RandomSource rng(kSeed + 1);
  const auto [c, cp] = algebra::pair_c();
  const auto fa = geometry::AdmissibleForm::sym(c);
  const auto fb = geometry::AdmissibleForm::sym(cp);
  const auto witness = spectral::make_witness_provider(fa, fb);
  double worst = 0.0;
  int made = 0;
  while (made < 20) {
    const algebra::TorusWeight mu{static_cast<int>(rng.index(7)) - 3,
                                  static_cast<int>(rng.index(7)) - 3};
    const auto poly = spectral::random_weight_polynomial(2, 3, mu, rng);
    if (!poly) continue;
    worst = std::max(worst,
                     spectral::rayleigh_identity_check(fa, fb, mu, witness, {*poly}, 200, rng));
    ++made;
  }
  std::ostringstream os;
  os << "max residual " << worst << " over 20 cubics x 200 points";
  return {worst <= 1e-9, os.str()};
}

// ---- criterion 5: round-sphere Galerkin exactness ---------------------------
std::pair<bool, std::string> criterion5() {
  const auto basis = spectral::MonomialBasis::build(2, 3);
  const auto quad = spectral::QuadratureRule::build(2, geometry::Surface::sphere(), {6, 9});
  const auto zero = geometry::AdmissibleForm::su(algebra::SkewMapPair::zero(2));
  const auto rep = spectral::make_spectrum_report(basis, quad, zero, kSeed);
  std::map<int, long> hist;
  double worst = 0.0;
  bool assignable = true;
  for (double ev : rep.pooled_eigenvalues()) {
    int best = 0;
    for (int k = 1; k <= 3; ++k)
      if (std::abs(ev - testing::round_eigenvalue(2, k)) <
          std::abs(ev - testing::round_eigenvalue(2, best)))
        best = k;
    const double diff = std::abs(ev - testing::round_eigenvalue(2, best));
    assignable = assignable && diff < 1e-4;
    worst = std::max(worst, diff);
    hist[best]++;
  }
  bool mult_ok = assignable;
  for (int k = 0; k <= 3; ++k) mult_ok = mult_ok && hist[k] == testing::round_multiplicity(2, k);
  std::ostringstream os;
  os << "worst eigenvalue error " << worst << ", multiplicities "
     << hist[0] << "/" << hist[1] << "/" << hist[2] << "/" << hist[3];
  return {mult_ok && worst <= 1e-8, os.str()};
}

// ---- criteria 6 and 7: per-weight block agreement under refinement ---------
std::pair<bool, std::string> block_agreement(int m, int N,
                                             const geometry::AdmissibleForm& fa,
                                             const geometry::AdmissibleForm& fb,
                                             std::vector<spectral::QuadratureOrders> levels,
                                             double tol) {
  const auto basis = spectral::MonomialBasis::build(m, N);
  std::vector<double> gaps;
  for (const auto& lvl : levels) {
    const auto quad = spectral::QuadratureRule::build(m, geometry::Surface::sphere(), lvl);
    auto ra = spectral::make_spectrum_report(basis, quad, fa, kSeed);
    auto rb = spectral::make_spectrum_report(basis, quad, fb, kSeed);
    gaps.push_back(spectral::compare_spectra(ra, rb, tol).max_gap);
  }
  bool ok = gaps.back() <= tol;
  for (std::size_t l = 0; l + 1 < gaps.size(); ++l) ok = ok && gaps[l + 1] <= gaps[l];
  std::ostringstream os;
  os << "gaps";
  for (double g : gaps) os << " " << g;
  os << " (tol " << tol << " at finest)";
  return {ok, os.str()};
}

std::pair<bool, std::string> criterion6() {
  const auto [c, cp] = algebra::pair_c();
  return block_agreement(2, 3, geometry::AdmissibleForm::sym(c),
                         geometry::AdmissibleForm::sym(cp), {{3, 9}, {8, 11}}, 1e-6);
}

std::pair<bool, std::string> criterion7() {
  return block_agreement(3, 2, geometry::AdmissibleForm::su(algebra::family_j(0.0)),
                         geometry::AdmissibleForm::su(algebra::family_j(0.7)),
                         {{2, 7}, {6, 9}}, 1e-5);
}

// ---- criterion 8: curvature formulas against finite differences ------------
std::pair<bool, std::string> criterion8() {
  RandomSource rng(kSeed + 2);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool su = trial % 2 == 0;
    const double a = rng.uniform(0.35, 0.92);
    const double b = std::sqrt(1.0 - a * a);
    const int m = su ? 3 : 2;
    const auto pt = testing::random_product_point(m, a, b, rng);
    const VectorXd X = testing::random_product_tangent(pt, rng);
    const VectorXd Y = testing::random_product_tangent(pt, rng);
    const geometry::AdmissibleForm form =
        su ? geometry::AdmissibleForm::su(testing::random_skew_pair(3, rng))
           : geometry::AdmissibleForm::sym(testing::random_sym_pair(rng));
    const Vector2d closed = geometry::curvature_dlambda(form, pt, X, Y);
    const Vector2d fd = testing::fd_exterior_derivative(form, pt, X, Y);
    worst = std::max(worst, (closed - fd).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << "max |closed - finite difference| " << worst << " over 100 draws";
  return {worst <= 1e-6, os.str()};
}

// ---- criterion 9: bump experiment ------------------------------------------
std::pair<bool, std::string> criterion9() {
  RandomSource rng(kSeed + 3);
  const auto [c, cp] = algebra::pair_c();
  geometry::BumpProfile profile;
  profile.center = Vector2d(0.02, 0.98);
  profile.radii = Vector2d(0.05, 0.05);
  profile.amplitude = 0.5;
  if (!geometry::bump_support_meets_sphere(profile))
    return {false, "profile misses the sphere locus"};

  const geometry::Surface sphere = geometry::Surface::sphere();
  const double total_vol = std::pow(M_PI, 3);
  const double eps = 0.01 * total_vol;
  const long n_samples = 1000000;
  long hits = 0;
  for (long s = 0; s < n_samples; ++s) {
    const auto pt = spectral::random_surface_point(2, sphere, rng);
    if (geometry::bump_eval(profile, pt) != 0.0) ++hits;
  }
  const double p_hat = static_cast<double>(hits) / n_samples;
  const double vol_est = p_hat * total_vol;
  const double se = total_vol * std::sqrt(p_hat * (1.0 - p_hat) / n_samples);
  const bool vol_ok = vol_est + 3.0 * se < eps;

  const auto fa = geometry::AdmissibleForm::sym(c).with_bump(profile);
  const auto fb = geometry::AdmissibleForm::sym(cp).with_bump(profile);
  const auto zero = geometry::AdmissibleForm::sym(algebra::SymMapPair::zero());
  double outside_dev = 0.0;
  int checked = 0;
  while (checked < 200) {
    const auto pt = spectral::random_surface_point(2, sphere, rng);
    if (geometry::bump_eval(profile, pt) != 0.0) continue;
    const auto frame = geometry::tangent_frame(pt, sphere);
    outside_dev = std::max(outside_dev,
                           (geometry::metric_gram(fa, pt, frame).gram -
                            geometry::metric_gram(zero, pt, frame).gram)
                               .cwiseAbs()
                               .maxCoeff());
    ++checked;
  }

  const auto witness = spectral::make_witness_provider(
      geometry::AdmissibleForm::sym(c), geometry::AdmissibleForm::sym(cp));
  double star = 0.0;
  for (int m1 = -5; m1 <= 5; ++m1)
    for (int m2 = -5; m2 <= 5; ++m2)
      star = std::max(star, spectral::verify_star(fa, fb, {m1, m2}, witness, 1000, rng));

  const bool ok = vol_ok && outside_dev == 0.0 && star <= 1e-10;
  std::ostringstream os;
  os << "volume " << vol_est << " + 3SE " << 3 * se << " < eps " << eps << " "
     << (vol_ok ? "ok" : "FAIL") << "; outside deviation " << outside_dev
     << "; bumped star " << star;
  return {ok, os.str()};
}

// ---- criterion 10: module invariant suites ----------------------------------
std::pair<bool, std::string> criterion10() {
  bool ok = true;
  int total = 0, passed = 0;
  std::string first_failure;
  for (const auto& suite :
       {testing::algebra_properties(kSeed), testing::geometry_properties(kSeed),
        testing::spectral_properties(kSeed), testing::cli_properties(kSeed)}) {
    for (const auto& r : suite) {
      ++total;
      if (r.ok) {
        ++passed;
      } else if (first_failure.empty()) {
        first_failure = r.name + " (" + r.detail + ")";
      }
      ok = ok && r.ok;
    }
  }
  std::ostringstream os;
  os << passed << "/" << total << " invariant suites passed";
  if (!first_failure.empty()) os << "; first failure: " << first_failure;
  return {ok, os.str()};
}

}  // namespace

int main() {
  std::printf("isospec acceptance suite (seed %llu)\n",
              static_cast<unsigned long long>(kSeed));
  run(1, "su(3) family: char polys, invariant 14+4sin^2 t, genericity flip", criterion1);
  run(2, "Sym_0 pair: isospectral, invariants 14 vs 18, both generic", criterion2);
  run(3, "condition (*) residual over |m1|,|m2| <= 5", criterion3);
  run(4, "Rayleigh-quotient identity on random pure-weight cubics", criterion4);
  run(5, "round S^5 Galerkin exactness {0,5,12,21} x {1,6,20,50}", criterion5);
  run(6, "S^5 pair: per-weight block agreement under refinement", criterion6);
  run(7, "S^7 family: per-weight block agreement under refinement", criterion7);
  run(8, "curvature two-forms vs finite-difference oracle on M_{a,b}", criterion8);
  run(9, "bump-localized pair: volume budget, locality, condition (*)", criterion9);
  run(10, "module invariant property suites", criterion10);
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures;
}
