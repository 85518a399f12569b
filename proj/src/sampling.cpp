#include "rieszlab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace rieszlab {

namespace {

Eigen::VectorXd log_spaced(Index dim, double hi) {
  Eigen::VectorXd s(dim);
  for (Index k = 0; k < dim; ++k) {
    const double t = dim > 1 ? static_cast<double>(k) / static_cast<double>(dim - 1) : 0.0;
    s[k] = std::pow(hi, t);
  }
  return s;
}

}  // namespace

double Sampler::uniform() {
  // 53 high bits -> [0, 1), shifted to (0, 1] so log() below stays finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Sampler::normal() {
  // Box-Muller; the second variate is discarded to keep the stream simple.
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

KetVector Sampler::random_ket(Index dim) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = complex_normal();
  return KetVector(std::move(v));
}

KetVector Sampler::random_unit_ket(Index dim) {
  KetVector v = random_ket(dim);
  return Complex(1.0 / v.norm()) * v;
}

std::vector<KetVector> Sampler::kets(Index dim, std::size_t count) {
  std::vector<KetVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_ket(dim));
  return out;
}

std::vector<std::pair<KetVector, KetVector>> Sampler::ket_pairs(Index dim, std::size_t count) {
  std::vector<std::pair<KetVector, KetVector>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    KetVector x = random_ket(dim);
    KetVector y = random_ket(dim);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

LinearMap Sampler::random_unitary(Index dim) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return LinearMap(std::move(q));
}

LinearMap Sampler::random_with_cond(Index dim, double cond) {
  const Matrix w = random_unitary(dim).matrix();
  const Matrix v = random_unitary(dim).matrix();
  const Eigen::VectorXd s = log_spaced(dim, cond);
  return LinearMap(Matrix(w * s.cast<Complex>().asDiagonal() * v.adjoint()));
}

LinearMap Sampler::random_positive(Index dim, double cond) {
  const Matrix w = random_unitary(dim).matrix();
  const Eigen::VectorXd s = log_spaced(dim, cond);
  Matrix p = w * s.cast<Complex>().asDiagonal() * w.adjoint();
  p = 0.5 * (p + p.adjoint());
  return LinearMap(std::move(p)).certified();
}

}  // namespace rieszlab
