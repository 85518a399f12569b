#include "rieszlab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rieszlab {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NonFiniteValue(std::string(what) + " contains NaN or Inf");
  }
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "linear map must be square, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(msg.str());
  }
}

bool is_hermitian(const Matrix& m) {
  if (m.size() == 0) return true;
  const double scale = m.cwiseAbs().maxCoeff();
  return hermitian_defect(m) <= kSelfAdjointTol * scale;
}

// Exactly Hermitian copy; callers only use it on nominally Hermitian input.
Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// --- KetVector ---------------------------------------------------------------

KetVector::KetVector(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (!coeffs_.allFinite()) throw NonFiniteValue("ket vector contains NaN or Inf");
}

KetVector::KetVector(std::initializer_list<Complex> coeffs)
    : KetVector(Vector::Map(coeffs.begin(), static_cast<Index>(coeffs.size()))) {}

KetVector KetVector::basis(Index dim, Index n) {
  if (n < 0 || n >= dim) throw DimensionMismatch("basis index out of range");
  Vector v = Vector::Zero(dim);
  v[n] = 1.0;
  return KetVector(std::move(v));
}

KetVector KetVector::zero(Index dim) { return KetVector(Vector::Zero(dim)); }

KetVector operator+(const KetVector& a, const KetVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ket dimensions differ");
  return KetVector(Vector(a.coeffs_ + b.coeffs_));
}

KetVector operator-(const KetVector& a, const KetVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ket dimensions differ");
  return KetVector(Vector(a.coeffs_ - b.coeffs_));
}

KetVector operator*(Complex c, const KetVector& v) { return KetVector(Vector(c * v.coeffs_)); }

Complex inner(const KetVector& x, const KetVector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("inner product of kets with different dimensions");
  // Eigen's dot is conjugate-linear in its first argument.
  return y.coeffs().dot(x.coeffs());
}

// --- LinearMap ---------------------------------------------------------------

LinearMap::LinearMap(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_);
  require_finite(entries_, "linear map");
  if (entries_.rows() == 0) throw DimensionMismatch("linear map dimension must be positive");
  self_adjoint_ = is_hermitian(entries_);
}

LinearMap::LinearMap(Matrix entries, bool positive, std::optional<double> cond)
    : LinearMap(std::move(entries)) {
  positive_ = positive && self_adjoint_;
  cond_ = cond;
}

LinearMap LinearMap::identity(Index dim) { return LinearMap(Matrix::Identity(dim, dim), true, 1.0); }

LinearMap LinearMap::zero(Index dim) { return LinearMap(Matrix::Zero(dim, dim)); }

LinearMap LinearMap::diagonal(std::span<const Complex> values) {
  Vector d = Vector::Map(values.data(), static_cast<Index>(values.size()));
  return LinearMap(Matrix(d.asDiagonal()));
}

LinearMap LinearMap::diagonal(std::span<const double> values) {
  Eigen::VectorXd d = Eigen::VectorXd::Map(values.data(), static_cast<Index>(values.size()));
  return LinearMap(Matrix(d.cast<Complex>().asDiagonal()));
}

double LinearMap::norm_max() const { return entries_.cwiseAbs().maxCoeff(); }

KetVector LinearMap::apply(const KetVector& x) const {
  if (x.dim() != dim()) throw DimensionMismatch("operator and ket dimensions differ");
  return KetVector(Vector(entries_ * x.coeffs()));
}

LinearMap LinearMap::certified() const {
  LinearMap out = *this;
  if (self_adjoint_) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(entries_), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const double lmin = lambda.minCoeff();
    const double lmax = lambda.maxCoeff();
    out.positive_ = lmin >= -kPositiveTol * std::max(lmax, 0.0);
    const double amax = lambda.cwiseAbs().maxCoeff();
    const double amin = lambda.cwiseAbs().minCoeff();
    out.cond_ = amin > 0.0 ? amax / amin : std::numeric_limits<double>::infinity();
  } else {
    out.positive_ = false;
    out.cond_ = extreme_singular_values(*this).cond();
  }
  return out;
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return LinearMap(Matrix(a.entries_ * b.entries_));
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return LinearMap(Matrix(a.entries_ + b.entries_));
}

LinearMap operator-(const LinearMap& a, const LinearMap& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return LinearMap(Matrix(a.entries_ - b.entries_));
}

LinearMap operator*(Complex c, const LinearMap& a) { return LinearMap(Matrix(c * a.entries_)); }

// --- operations --------------------------------------------------------------

double SingularValues::cond() const {
  return sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
}

LinearMap adjoint(const LinearMap& a) { return LinearMap(Matrix(a.matrix().adjoint())); }

HermitianEigen hermitian_eig(const LinearMap& a) {
  if (!a.self_adjoint()) throw NotSelfAdjoint("hermitian_eig requires a self-adjoint map");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a.matrix()));
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), LinearMap(solver.eigenvectors())};
}

LinearMap operator_sqrt(const LinearMap& a) {
  HermitianEigen eig = hermitian_eig(a);
  Eigen::VectorXd lambda = eig.eigenvalues;
  const double lmax = std::max(lambda.maxCoeff(), 0.0);
  const double floor = -kPositiveTol * lmax;
  if (lambda.minCoeff() < floor || (lmax == 0.0 && lambda.minCoeff() < 0.0)) {
    std::ostringstream msg;
    msg << "operator_sqrt requires a positive map, lambda_min = " << lambda.minCoeff();
    throw NotPositive(msg.str(), lambda.minCoeff());
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = eig.eigenvectors.matrix();
  Matrix root = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  const double smin = lambda.minCoeff();
  const double smax = lambda.maxCoeff();
  std::optional<double> cond = smin > 0.0 ? std::optional<double>(smax / smin) : std::nullopt;
  return LinearMap(hermitian_part(root), true, cond);
}

SingularValues extreme_singular_values(const LinearMap& a) {
  Eigen::BDCSVD<Matrix> svd(a.matrix());
  const Eigen::VectorXd& s = svd.singularValues();
  return {s.maxCoeff(), s.minCoeff()};
}

LinearMap invert(const LinearMap& a, double singularity_floor) {
  Eigen::BDCSVD<Matrix> svd(a.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.maxCoeff();
  const double smin = s.minCoeff();
  if (!(smax > 0.0) || smin <= singularity_floor * smax) {
    std::ostringstream msg;
    msg << "numerically singular: sigma_min = " << smin << ", sigma_max = " << smax;
    throw NumericallySingular(msg.str(), smin);
  }
  Matrix inv = svd.matrixV() * s.cwiseInverse().cast<Complex>().asDiagonal() *
               svd.matrixU().adjoint();
  if (a.self_adjoint()) inv = hermitian_part(inv);
  return LinearMap(std::move(inv), a.positive(), smax / smin);
}

PolarFactors polar_decompose(const LinearMap& t) {
  // T = W S V*  =>  T = (W S W*)(W V*), with W S W* = (T T*)^{1/2}.
  Eigen::BDCSVD<Matrix> svd(t.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.maxCoeff();
  const double smin = s.minCoeff();
  if (!(smax > 0.0) || smin <= kSingularityFloor * smax) {
    std::ostringstream msg;
    msg << "polar decomposition of a numerically singular map: sigma_min = " << smin;
    throw NumericallySingular(msg.str(), smin);
  }
  const Matrix& w = svd.matrixU();
  Matrix u = w * svd.matrixV().adjoint();
  Matrix p = w * s.cast<Complex>().asDiagonal() * w.adjoint();
  return {LinearMap(std::move(u), false, 1.0), LinearMap(hermitian_part(p), true, smax / smin)};
}

double hermitian_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double relative_fro(const Matrix& a, const Matrix& b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > std::numeric_limits<double>::min() ? diff / denom : diff;
}

Matrix columns(std::span<const KetVector> vectors) {
  if (vectors.empty()) return Matrix(0, 0);
  const Index dim = vectors.front().dim();
  Matrix m(dim, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].dim() != dim) throw DimensionMismatch("family members have different dimensions");
    m.col(static_cast<Index>(k)) = vectors[k].coeffs();
  }
  return m;
}

std::vector<KetVector> column_vectors(const Matrix& m) {
  std::vector<KetVector> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Index k = 0; k < m.cols(); ++k) out.emplace_back(Vector(m.col(k)));
  return out;
}

}  // namespace rieszlab
