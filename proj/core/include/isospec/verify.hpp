#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "isospec/basis.hpp"
#include "isospec/geometry.hpp"
#include "isospec/rng.hpp"
#include "isospec/types.hpp"

namespace isospec::spectral {

// The equivariant isometry F_mu = (A, Id) certifying mu . lambda =
// F_mu^*(mu . lambda').  For sym-type forms A is the SU(2) lift of the SO(3)
// witness E, which is carried along for the relation check.
struct StarWitness {
  MatrixXcd A;  // m x m, acting on the p block
  std::optional<Matrix3d> E;
  double relation_residual = 0.0;
};

using WitnessProvider = std::function<StarWitness(const algebra::TorusWeight&)>;

// Builds witnesses from the forms' matrix pairs: conjugation of
// j_Z = m1 J1 + m2 J2 (su) resp. c_Z (sym, then lifted through the Hopf
// double cover).  Bump profiles are irrelevant to the witnesses.
WitnessProvider make_witness_provider(const geometry::AdmissibleForm& form_a,
                                      const geometry::AdmissibleForm& form_b);

// Max over random tangent samples of
//   |(mu.lambda)(v)|_pt - (mu.lambda')(F v)|_{F pt}|.
// Verifies the witness relation first (throws WitnessFailure above 1e-8).
double verify_star(const geometry::AdmissibleForm& form_a,
                   const geometry::AdmissibleForm& form_b, const algebra::TorusWeight& mu,
                   const WitnessProvider& witness, int sample_count, RandomSource& rng);

// Max over test polynomials and random points of
//   | ||d(psi o F)||_{g_lambda}(x) - ||d psi||_{g_lambda'}(F x) |,
// norms computed through the inverse metric Gram matrix in the round frame.
// All test polynomials must have pure weight mu.
double rayleigh_identity_check(const geometry::AdmissibleForm& form_a,
                               const geometry::AdmissibleForm& form_b,
                               const algebra::TorusWeight& mu, const WitnessProvider& witness,
                               const std::vector<WeightPolynomial>& test_polynomials,
                               int point_count, RandomSource& rng);

// Random point on the form's surface and random unit tangent vector.
geometry::AmbientPoint random_surface_point(int m, const geometry::Surface& surface,
                                            RandomSource& rng);
VectorXd random_tangent(const geometry::AmbientPoint& pt, const geometry::Surface& surface,
                        RandomSource& rng);

// Random polynomial supported on the weight-mu slice of degree <= N
// monomials, coefficients normalized.  Returns nullopt if the slice is empty.
std::optional<WeightPolynomial> random_weight_polynomial(int m, int N,
                                                         const algebra::TorusWeight& mu,
                                                         RandomSource& rng);

// ||df||_{g_lambda} at pt for a polynomial with the given Wirtinger gradient.
double metric_gradient_norm(const geometry::AdmissibleForm& form,
                            const geometry::AmbientPoint& pt,
                            const geometry::Surface& surface,
                            const std::vector<Complex>& wirtinger,
                            const MatrixXcd* pullback = nullptr);

}  // namespace isospec::spectral
