#include <doctest.h>

#include <cmath>

#include "rieszlab/errors.hpp"
#include "rieszlab/physical_operators.hpp"
#include "rieszlab/sampling.hpp"

using namespace rieszlab;

TEST_CASE("ladder matrices for sqrt(n) at N = 3 by hand") {
  const LadderPair l = ladder_operators(AlphaSequence::sqrt_n(3), 3);
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = std::sqrt(2.0);
  CHECK((l.lowering.matrix() - a).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((l.raising.matrix() - a.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  // Number operator B A = diag(alpha_n^2).
  const Matrix n = l.raising.matrix() * l.lowering.matrix();
  for (Index k = 0; k < 3; ++k) CHECK(std::abs(n(k, k) - Complex(k)) < 1e-15);
}

TEST_CASE("alpha validation flags monotonicity and gap violations") {
  CHECK(validate_alpha(AlphaSequence::sqrt_n(10)).pass);
  CHECK(validate_alpha(AlphaSequence::linear(10)).pass);
  // alpha_2 - alpha_1 = 2 exceeds r = 1.
  const CheckReport gap = validate_alpha(AlphaSequence::custom({0.0, 1.0, 3.0}, 1.0));
  CHECK_FALSE(gap.pass);
  CHECK(gap.details.at("first_violation") == 2);
  CHECK_FALSE(validate_alpha(AlphaSequence::custom({0.0, 2.0, 1.0})).pass);
  CHECK_FALSE(validate_alpha(AlphaSequence::custom({-1.0, 0.0})).pass);
}

TEST_CASE("CCR defect is I - N P_{N-1} exactly at small N") {
  for (const Index n : {2, 3, 5}) {
    const CheckReport r = ccr_check(AlphaSequence::sqrt_n(n), n);
    CHECK(r.pass);
    CHECK(r.details.at("edge_diagonal") == doctest::Approx(1.0 - static_cast<double>(n)));
  }
  CHECK_THROWS_AS(ccr_check(AlphaSequence::linear(4), 4), WrongAlphaKind);
}

TEST_CASE("sum form equals similarity form and eigenvectors are phi") {
  Sampler s(31);
  const ConstructingPair pair(s.random_with_cond(8, 40.0));
  const BiorthogonalSystem sys = build_system(pair);
  const AlphaSequence alpha = AlphaSequence::linear(8);
  CHECK(hamiltonian_agreement_check(sys, alpha).pass);
  const OperatorSet set = build_operator_set(pair, alpha);
  CHECK(eigen_check(set.H_phi_psi, sys.phi, alpha, 1e-8 * pair.cond()).pass);
  CHECK(eigen_check(set.H_psi_phi, sys.psi, alpha, 1e-8 * pair.cond()).pass);
}

TEST_CASE("ladder actions and the truncation edge") {
  Sampler s(37);
  const ConstructingPair pair(s.random_with_cond(10, 30.0));
  const BiorthogonalSystem sys = build_system(pair);
  const OperatorSet set = build_operator_set(pair, AlphaSequence::sqrt_n(10));
  const CheckReport r = ladder_check(set.A_phi_psi, set.B_phi_psi, sys.phi, set.alpha);
  CHECK(r.pass);
  CHECK(r.details.at("raising_edge") < 1e-10);  // B e_{N-1} = 0 after truncation
  CHECK(ladder_check(set.A_psi_phi, set.B_psi_phi, sys.psi, set.alpha).pass);
}

TEST_CASE("adjoint relations hold with complex alpha") {
  Sampler s(41);
  const ConstructingPair pair(s.random_with_cond(6, 10.0));
  const AlphaSequence alpha = AlphaSequence::custom({0.0, Complex(1, 0.5), Complex(2, -1), 3.0, 4.0, 5.0});
  const CheckReport r = adjoint_relation_check(build_operator_set(pair, alpha));
  CHECK(r.pass);
  CHECK(r.details.at("A_phi_psi_to_A_psi_phi_unpaired") > 1e-3);
}

TEST_CASE("product identities including the mixed product") {
  Sampler s(43);
  const ConstructingPair pair(s.random_positive(8, 20.0));
  const OperatorSet set = build_operator_set(pair, AlphaSequence::sqrt_n(8));
  for (int m = 0; m <= 2; ++m)
    for (int l = 0; l <= 2; ++l) CHECK(product_identity_check(set, m, l).pass);
  CHECK_THROWS_AS(product_identity_check(set, 5, 4), Error);
}

TEST_CASE("domain mapping reports the amplification") {
  std::vector<double> d;
  for (int i = 0; i < 16; ++i) d.push_back(std::pow(2.0, i / 3.0));
  const LinearMap t = LinearMap::diagonal(std::span<const double>(d));
  const LinearMap h = diag_hamiltonian(AlphaSequence::linear(16), 16);
  const CheckReport r = domain_mapping_check(t, h, Side::phi_psi);
  CHECK(r.pass);
  CHECK(r.details.at("amplification") == doctest::Approx(d.back()));
}

TEST_CASE("short alpha sequences are refused") {
  CHECK_THROWS_AS(diag_hamiltonian(AlphaSequence::linear(3), 4), DimensionMismatch);
}
