#include <doctest.h>

#include <cmath>
#include <limits>

#include "rieszlab/errors.hpp"
#include "rieszlab/operator_core.hpp"
#include "rieszlab/sampling.hpp"

using namespace rieszlab;

namespace {

Matrix hand_matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const Complex v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("inner product is linear in the first argument") {
  const KetVector x{Complex(1, 2), Complex(0, -1)};
  const KetVector y{Complex(3, 0), Complex(2, 1)};
  // Written out by hand: sum x_i conj(y_i).
  const Complex expected = Complex(1, 2) * 3.0 + Complex(0, -1) * Complex(2, -1);
  CHECK(std::abs(inner(x, y) - expected) < 1e-15);
  CHECK(std::abs(inner(Complex(0, 1) * x, y) - Complex(0, 1) * expected) < 1e-15);
  CHECK(std::abs(inner(x, Complex(0, 1) * y) + Complex(0, 1) * expected) < 1e-15);
}

TEST_CASE("ket vectors reject non-finite coefficients") {
  Vector v(2);
  v << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(KetVector{v}, NonFiniteValue);
  CHECK(KetVector::basis(4, 2)[2] == Complex(1.0));
  CHECK(KetVector::zero(3).norm() == 0.0);
}

TEST_CASE("linear maps validate their entries") {
  CHECK_THROWS_AS(LinearMap(Matrix(2, 3)), DimensionMismatch);
  CHECK(LinearMap::identity(3).self_adjoint());
  CHECK_FALSE(LinearMap(hand_matrix({{1, 1}, {0, 1}})).self_adjoint());
}

TEST_CASE("inverse of a 2x2 matches the adjugate formula") {
  const Matrix a = hand_matrix({{2, Complex(1, 1)}, {0, 3}});
  const LinearMap inv = invert(LinearMap(a));
  // [[a b][c d]]^{-1} = [[d -b][-c a]] / (ad - bc)
  const Complex det = 2.0 * 3.0;
  const Matrix expected = hand_matrix({{3.0 / det, -Complex(1, 1) / det}, {0, 2.0 / det}});
  CHECK((inv.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE(inv.cond_estimate());
  CHECK(*inv.cond_estimate() > 1.0);
}

TEST_CASE("singular operators are refused with sigma_min") {
  const Matrix a = hand_matrix({{1, 2}, {2, 4}});
  try {
    invert(LinearMap(a));
    FAIL("expected NumericallySingular");
  } catch (const NumericallySingular& e) {
    CHECK(e.sigma_min() < 1e-12);
  }
}

TEST_CASE("square root of a diagonal positive operator") {
  const std::vector<double> d = {1.0, 4.0, 9.0};
  const LinearMap s = operator_sqrt(LinearMap::diagonal(std::span<const double>(d)));
  for (Index i = 0; i < 3; ++i) CHECK(std::abs(s(i, i) - Complex(i + 1.0)) < 1e-14);
  CHECK(s.positive());
  CHECK_THROWS_AS(operator_sqrt(LinearMap(hand_matrix({{1, 0}, {0, -1}}))), NotPositive);
  CHECK_THROWS_AS(operator_sqrt(LinearMap(hand_matrix({{1, 1}, {0, 1}}))), NotSelfAdjoint);
}

TEST_CASE("square root of a random positive operator squares back") {
  Sampler s(3);
  const LinearMap p = s.random_positive(8, 50.0);
  const LinearMap r = operator_sqrt(p);
  CHECK(relative_fro((r * r).matrix(), p.matrix()) < 1e-12);
  CHECK(hermitian_defect(r.matrix()) < 1e-14);
}

TEST_CASE("polar factors reassemble and have the right shape") {
  Sampler s(11);
  const LinearMap t = s.random_with_cond(10, 30.0);
  const PolarFactors f = polar_decompose(t);
  CHECK(relative_fro((f.positive_part * f.unitary_part).matrix(), t.matrix()) < 1e-12);
  CHECK(unitarity_defect(f.unitary_part.matrix()) < 1e-12);
  // P^2 = T T* independently of the SVD route.
  const Matrix ttstar = t.matrix() * t.matrix().adjoint();
  CHECK(relative_fro((f.positive_part * f.positive_part).matrix(), ttstar) < 1e-12);
}

TEST_CASE("sampler is reproducible and hits the requested condition number") {
  Sampler a(42), b(42);
  CHECK(a.normal() == b.normal());
  const LinearMap t = a.random_with_cond(12, 100.0);
  CHECK(std::abs(extreme_singular_values(t).cond() - 100.0) < 1e-8);
  CHECK(unitarity_defect(a.random_unitary(6).matrix()) < 1e-13);
}

TEST_CASE("relative_fro falls back to absolute for a zero reference") {
  const Matrix z = Matrix::Zero(2, 2);
  Matrix a = z;
  a(0, 0) = 0.5;
  CHECK(relative_fro(a, z) == doctest::Approx(0.5));
}
