#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rieszlab/errors.hpp"
#include "rieszlab/hermite_model.hpp"

using namespace rieszlab;
using namespace rieszlab::hermite;

namespace {

// Hermite function from the library-independent physicists' polynomial.
double reference_e(unsigned n, double x) {
  double norm = std::pow(std::numbers::pi, -0.25);
  for (unsigned k = 1; k <= n; ++k) norm /= std::sqrt(2.0 * k);
  return norm * std::hermite(n, x) * std::exp(-x * x / 2.0);
}

// Trapezoid rule on [-L, L]; exponentially accurate for these smooth, decaying integrands.
double trapezoid_element(unsigned m, unsigned n, double (*mult)(double)) {
  const double l = 14.0;
  const int steps = 4000;
  const double h = 2.0 * l / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = -l + h * i;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    sum += w * reference_e(m, x) * mult(x) * reference_e(n, x);
  }
  return sum * h;
}

double one_plus_x2(double x) { return 1.0 + x * x; }
double inv_one_plus_x2(double x) { return 1.0 / (1.0 + x * x); }

}  // namespace

TEST_CASE("recurrence agrees with std::hermite") {
  for (unsigned n : {0u, 1u, 2u, 5u, 12u, 30u})
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5, 5.0})
      CHECK(hermite_function(n, x) == doctest::Approx(reference_e(n, x)).epsilon(1e-11).scale(1e-12));
  CHECK_THROWS_AS(hermite_function(kMaxIndex + 1, 0.0), IndexTooLarge);
}

TEST_CASE("hermite functions survive where the Gaussian underflows") {
  const std::vector<double> e = hermite_functions(401, 38.0);
  CHECK(std::isfinite(e.back()));
  CHECK(e.back() != 0.0);
  // Orthonormal functions are bounded by pi^{-1/4}.
  for (double v : e) CHECK(std::abs(v) < 0.76);
}

TEST_CASE("Gauss-Hermite rule integrates polynomials exactly") {
  const GaussHermiteRule rule = gauss_hermite(20);
  // int x^{2k} exp(-x^2) = Gamma(k + 1/2).
  for (int k = 0; k < 20; ++k) {
    const double got = rule.integrate([k](double x) { return std::pow(x, 2 * k) * std::exp(-x * x); });
    CHECK(got == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-12));
  }
  CHECK_THROWS(gauss_hermite(0));
}

TEST_CASE("quadrature matrix elements against an independent trapezoid rule") {
  for (unsigned m = 0; m < 6; ++m)
    for (unsigned n = 0; n < 6; ++n) {
      CHECK(quadrature_inner_product(m, n, Multiplier::one_plus_x2) ==
            doctest::Approx(trapezoid_element(m, n, one_plus_x2)).scale(1.0).epsilon(1e-11));
      CHECK(quadrature_inner_product(m, n, Multiplier::one) ==
            doctest::Approx(m == n ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("non-polynomial multiplier converges under doubling") {
  const QuadratureEstimate q = quadrature_inner_product_checked(2, 4, Multiplier::inv_one_plus_x2, 200);
  CHECK(q.deviation < 1e-10);
  CHECK(q.refined == doctest::Approx(trapezoid_element(2, 4, inv_one_plus_x2)).scale(1.0).epsilon(1e-10));
}

TEST_CASE("X formula entries by hand and against quadrature") {
  const LinearMap x = x_matrix_formula(6);
  CHECK(x(0, 0) == Complex(1.5));
  CHECK(std::abs(x(0, 2) - Complex(std::sqrt(2.0) / 2.0)) < 1e-15);
  CHECK(x(0, 1) == Complex(0.0));
  // |phi_0|^2 = 9/4 + 1/2.
  CHECK(x.matrix().col(0).squaredNorm() == doctest::Approx(11.0 / 4.0));
  const HermiteModel model = build_model(32);
  CHECK(model.oracle_residual < kOracleTolerance);
  CHECK(model.oracle_max_index == 31);
}

TEST_CASE("X is bounded below by the identity") {
  for (Index n : {4, 16, 64}) CHECK(hermitian_eig(build_X(n)).eigenvalues.minCoeff() >= 1.0 - 1e-12);
}

TEST_CASE("example system is biorthogonal on the interior") {
  const BiorthogonalSystem sys = build_example_system(64);
  CHECK(sys.interior_margin == 32);
  CHECK(sys.interior_count() == 33);
  const CheckReport r = check_biorthogonality(sys);
  CHECK(r.pass);
  CHECK(r.residual < 1e-8);
}

TEST_CASE("K_psi against the truncated inverse and the psi form") {
  const CheckReport r = verify_K_psi(64);
  CHECK(r.pass);
  CHECK(r.details.at("K_phi_vs_X2") < 1e-8);
  CHECK(r.details.at("omega_psi_vs_Xinv_inner") < 1e-8);
}

TEST_CASE("upper frame bound grows without limit") {
  const std::vector<Index> dims = {16, 32, 64};
  const FrameBoundGrowth g = frame_bound_growth(dims);
  CHECK(g.upper[0] < g.upper[1]);
  CHECK(g.upper[1] < g.upper[2]);
  for (double c : g.lower) CHECK(c >= 1.0 - 1e-12);
  CHECK(frame_growth_check(dims).pass);
}

TEST_CASE("tail dichotomy on the phi family") {
  const auto grid = default_tail_grid();
  const CheckReport r = tail_dichotomy_check(grid);
  CHECK(r.pass);
  CHECK(r.notes.at("harmonic") == "divergent");
  CHECK(r.notes.at("geometric") == "convergent");
}
