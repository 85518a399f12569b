#pragma once

// Dense complex linear algebra used by every other module: the LinearMap and
// KetVector value types plus adjoints, Hermitian eigensolves, square roots,
// inverses and the left polar decomposition.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/errors.hpp"

namespace rieszlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Relative tolerance used to certify the self-adjoint flag.
inline constexpr double kSelfAdjointTol = 1e-12;
// Eigenvalues down to -kPositiveTol * lambda_max still count as positive.
inline constexpr double kPositiveTol = 1e-10;
// sigma_min below kSingularityFloor * sigma_max means numerically singular.
inline constexpr double kSingularityFloor = 1e-12;

// Coordinates of a vector in the reference orthonormal basis {e_n}.
class KetVector {
 public:
  KetVector() = default;
  explicit KetVector(Vector coeffs);
  KetVector(std::initializer_list<Complex> coeffs);

  static KetVector basis(Index dim, Index n);
  static KetVector zero(Index dim);

  Index dim() const { return coeffs_.size(); }
  const Vector& coeffs() const { return coeffs_; }
  Complex operator[](Index i) const { return coeffs_[i]; }
  double norm() const { return coeffs_.norm(); }

  friend KetVector operator+(const KetVector& a, const KetVector& b);
  friend KetVector operator-(const KetVector& a, const KetVector& b);
  friend KetVector operator*(Complex c, const KetVector& v);

 private:
  Vector coeffs_;
};

class LinearMap;
struct PolarFactors;
PolarFactors polar_decompose(const LinearMap& t);
LinearMap operator_sqrt(const LinearMap& a);
LinearMap invert(const LinearMap& a, double singularity_floor = kSingularityFloor);

// <x, y>: linear in the first argument, conjugate-linear in the second.
Complex inner(const KetVector& x, const KetVector& y);

// N x N complex matrix with certified structural flags.
//
// self_adjoint is decided at construction from the entries. positive and
// cond_estimate are only present once an operation has established them
// (certified(), invert(), operator_sqrt(), ...), so a plain product never
// pays for an eigensolve.
class LinearMap {
 public:
  explicit LinearMap(Matrix entries);

  static LinearMap identity(Index dim);
  static LinearMap zero(Index dim);
  static LinearMap diagonal(std::span<const Complex> values);
  static LinearMap diagonal(std::span<const double> values);

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

  bool self_adjoint() const { return self_adjoint_; }
  bool positive() const { return positive_; }
  std::optional<double> cond_estimate() const { return cond_; }

  // Copy with positive and cond_estimate filled from a spectral analysis.
  LinearMap certified() const;

  double norm_fro() const { return entries_.norm(); }
  double norm_max() const;

  KetVector apply(const KetVector& x) const;

  friend LinearMap operator*(const LinearMap& a, const LinearMap& b);
  friend LinearMap operator+(const LinearMap& a, const LinearMap& b);
  friend LinearMap operator-(const LinearMap& a, const LinearMap& b);
  friend LinearMap operator*(Complex c, const LinearMap& a);
  friend KetVector operator*(const LinearMap& a, const KetVector& x) { return a.apply(x); }

 private:
  friend LinearMap operator_sqrt(const LinearMap&);
  friend LinearMap invert(const LinearMap&, double);
  friend PolarFactors polar_decompose(const LinearMap&);
  LinearMap(Matrix entries, bool positive, std::optional<double> cond);

  Matrix entries_;
  bool self_adjoint_ = false;
  bool positive_ = false;
  std::optional<double> cond_;
};

struct HermitianEigen {
  Eigen::VectorXd eigenvalues;  // ascending
  LinearMap eigenvectors;       // unitary, columns match eigenvalues
};

struct PolarFactors {
  LinearMap unitary_part;   // U
  LinearMap positive_part;  // P = (T T*)^{1/2}, with T = P U
};

struct SingularValues {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double cond() const;
};

LinearMap adjoint(const LinearMap& a);
HermitianEigen hermitian_eig(const LinearMap& a);
SingularValues extreme_singular_values(const LinearMap& a);

// Largest |a_ij - conj(a_ji)|.
double hermitian_defect(const Matrix& m);
// ||U* U - I||_F.
double unitarity_defect(const Matrix& u);
// ||a - b||_F / max(||b||_F, tiny); absolute when b vanishes.
double relative_fro(const Matrix& a, const Matrix& b);

// Stack vectors as the columns of a matrix. Throws DimensionMismatch.
Matrix columns(std::span<const KetVector> vectors);
std::vector<KetVector> column_vectors(const Matrix& m);

}  // namespace rieszlab
