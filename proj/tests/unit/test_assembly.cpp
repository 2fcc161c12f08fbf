#include <doctest.h>

#include <cmath>
#include <map>

#include "isospec/assembly.hpp"
#include "isospec/report.hpp"
#include "oracles.hpp"

using namespace isospec;
using namespace isospec::spectral;

namespace {

const geometry::Surface kSphere = geometry::Surface::sphere();

geometry::AdmissibleForm zero_form(int m) {
  return geometry::AdmissibleForm::su(algebra::SkewMapPair::zero(m));
}

}  // namespace

TEST_CASE("round sphere N=2: exact eigenvalues and multiplicities") {
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  auto report = make_spectrum_report(basis, quad, zero_form(2), 1);
  std::map<int, long> hist;
  double worst = 0.0;
  for (double ev : report.pooled_eigenvalues()) {
    int k = static_cast<int>(std::lround((std::sqrt(4.0 + ev) - 2.0)));
    worst = std::max(worst, std::abs(ev - testing::round_eigenvalue(2, k)));
    hist[k]++;
  }
  CHECK(worst < 1e-8);
  for (int k = 0; k <= 2; ++k) CHECK(hist[k] == testing::round_multiplicity(2, k));
  // 28 monomials restrict to the 27 harmonics of degree <= 2.
  std::size_t filtered = 0;
  for (const auto& b : report.blocks) filtered += b.eigenvalues.size();
  CHECK(filtered == 27);
}

TEST_CASE("weight-(0,0) mass block is positive definite after filtering") {
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  auto blocks = assemble_blocks(basis, quad, zero_form(2));
  bool found = false;
  for (auto& blk : blocks) {
    if (!(blk.weight == algebra::TorusWeight{0, 0})) continue;
    found = true;
    // Hermitian PSD with at least one null direction (|x|^2 - 1 restricts to 0).
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(blk.mass);
    CHECK(es.eigenvalues()[0] > -1e-12);
    const auto ev = solve_block(blk);
    CHECK(blk.filtered_rank < static_cast<int>(blk.entry_indices.size()));
    CHECK(static_cast<int>(ev.size()) == blk.filtered_rank);
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) CHECK(ev[i] <= ev[i + 1] + 1e-12);
    CHECK(ev.front() > -1e-9);
  }
  CHECK(found);
}

TEST_CASE("blocks for mu and -mu carry identical eigenvalue lists") {
  const auto [c, cp] = algebra::pair_c();
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  auto report = make_spectrum_report(basis, quad, geometry::AdmissibleForm::sym(c), 1);
  std::map<std::pair<int, int>, const BlockSpectrum*> by_weight;
  for (const auto& b : report.blocks) by_weight[{b.weight.m1, b.weight.m2}] = &b;
  for (const auto& b : report.blocks) {
    const auto* mirror = by_weight.at({-b.weight.m1, -b.weight.m2});
    REQUIRE(mirror->eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < b.eigenvalues.size(); ++i)
      CHECK(std::abs(b.eigenvalues[i] - mirror->eigenvalues[i]) < 1e-10);
  }
}

TEST_CASE("assembled blocks: mass PSD, stiffness hermitian") {
  const auto [c, cp] = algebra::pair_c();
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  const auto blocks = assemble_blocks(basis, quad, geometry::AdmissibleForm::sym(cp));
  for (const auto& blk : blocks) {
    CHECK((blk.stiffness - blk.stiffness.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(blk.mass);
    if (es.eigenvalues().size() > 0) CHECK(es.eigenvalues()[0] > -1e-10);
  }
}

TEST_CASE("cross-weight mass couplings vanish on the full symmetric rule") {
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {4, 7});
  // Direct check on monomial pairs of different weight.
  const geometry::AmbientPoint probe(2, (VectorXd(6) << 1, 0, 0, 0, 0, 0).finished());
  (void)probe;
  for (std::size_t i = 0; i < basis.entries.size(); i += 7)
    for (std::size_t j = 0; j < basis.entries.size(); j += 11) {
      if (basis.entries[i].weight() == basis.entries[j].weight()) continue;
      const Complex integral = quad.integrate_complex([&](const geometry::AmbientPoint& pt) {
        const auto ev = evaluate_basis(basis, pt);
        return ev.value[i] * std::conj(ev.value[j]);
      });
      CHECK(std::abs(integral) < 1e-13);
    }
}

TEST_CASE("solve_block: 1x1 and empty blocks") {
  WeightBlock blk;
  blk.weight = {0, 0};
  blk.entry_indices = {0};
  blk.mass = MatrixXcd::Constant(1, 1, Complex(2, 0));
  blk.stiffness = MatrixXcd::Constant(1, 1, Complex(10, 0));
  const auto ev = solve_block(blk);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(blk.filtered_rank == 1);

  WeightBlock empty;
  empty.mass = MatrixXcd::Zero(0, 0);
  empty.stiffness = MatrixXcd::Zero(0, 0);
  CHECK(solve_block(empty).empty());
}

TEST_CASE("assembly rejects insufficient symmetry order") {
  const auto basis = MonomialBasis::build(2, 3);
  const auto quad = QuadratureRule::build(2, kSphere, {4, 5});  // K = 5 < 2N+1 = 7
  CHECK_THROWS_AS(assemble_blocks(basis, quad, zero_form(2)), SymmetryViolation);
}

TEST_CASE("compare_spectra: trivial equality and metadata mismatch") {
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {5, 7});
  const auto report = make_spectrum_report(basis, quad, zero_form(2), 1);
  const auto verdict = compare_spectra(report, report, 1e-12);
  CHECK(verdict.ok);
  CHECK(verdict.max_gap == 0.0);

  const auto quad2 = QuadratureRule::build(2, kSphere, {6, 7});
  const auto other = make_spectrum_report(basis, quad2, zero_form(2), 1);
  CHECK_THROWS_AS(compare_spectra(report, other, 1e-12), MetadataMismatch);
}

TEST_CASE("report serialization: JSON schema keys and CSV rows") {
  const auto basis = MonomialBasis::build(2, 1);
  const auto quad = QuadratureRule::build(2, kSphere, {4, 5});
  auto report = make_spectrum_report(basis, quad, zero_form(2), 99);
  report.comparison = ComparisonVerdict{0.0, true};
  const std::string json = to_json(report);
  for (const char* needle :
       {"\"surface\": \"sphere\"", "\"m\": 2", "\"N\": 1", "\"quadrature\"", "\"orders\"",
        "\"K\": 5", "\"seed\": 99", "\"blocks\"", "\"weight\"", "\"eigenvalues\"",
        "\"comparison\"", "\"max_gap\"", "\"ok\": true"})
    CHECK(json.find(needle) != std::string::npos);

  const std::string csv = to_csv(report, &report);
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == 1 + report.pooled_eigenvalues().size());
  CHECK(csv.rfind("weight_m1,weight_m2,index,value_A,value_B,gap\n", 0) == 0);
}

TEST_CASE("product surface M_{a,b}: Galerkin eigenvalues hit the closed-form set") {
  // Round metric on S^3_a x S^1_b: eigenvalues k(k+2)/a^2 + n^2/b^2.  The
  // degree-limited polynomial restriction is an invariant subspace, so every
  // Galerkin eigenvalue must match a closed-form value.
  const double a = 0.8, b = 0.6;
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, geometry::Surface::product(a, b), {6, 7});
  const auto report = make_spectrum_report(basis, quad, zero_form(2), 1);
  const auto pooled = report.pooled_eigenvalues();
  CHECK(!pooled.empty());
  for (double ev : pooled) {
    double best = 1e300;
    for (int k = 0; k <= 2; ++k)
      for (int n = -2; n <= 2; ++n)
        best = std::min(best, std::abs(ev - (k * (k + 2) / (a * a) + n * n / (b * b))));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("assembly is bitwise deterministic across worker counts") {
  const auto [c, cp] = algebra::pair_c();
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  const auto form = geometry::AdmissibleForm::sym(c);
  setenv("ISOSPEC_THREADS", "1", 1);
  const auto serial = assemble_blocks(basis, quad, form);
  setenv("ISOSPEC_THREADS", "2", 1);
  const auto parallel = assemble_blocks(basis, quad, form);
  unsetenv("ISOSPEC_THREADS");
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK((serial[i].mass - parallel[i].mass).cwiseAbs().maxCoeff() == 0.0);
    CHECK((serial[i].stiffness - parallel[i].stiffness).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spectrum report invariants: sorted real eigenvalues, counts") {
  const auto [c, cp] = algebra::pair_c();
  const auto basis = MonomialBasis::build(2, 2);
  const auto quad = QuadratureRule::build(2, kSphere, {6, 7});
  const auto report =
      make_spectrum_report(basis, quad, geometry::AdmissibleForm::sym(cp), 1);
  for (const auto& blk : report.blocks) {
    CHECK(static_cast<int>(blk.eigenvalues.size()) == blk.filtered_rank);
    for (std::size_t i = 0; i + 1 < blk.eigenvalues.size(); ++i)
      CHECK(blk.eigenvalues[i] <= blk.eigenvalues[i + 1] + 1e-12);
    if (!blk.eigenvalues.empty()) CHECK(blk.eigenvalues.front() > -1e-9);
  }
}
