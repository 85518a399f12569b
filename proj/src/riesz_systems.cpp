#include "rieszlab/riesz_systems.hpp"

#include <algorithm>
#include <sstream>

namespace rieszlab {

namespace {

constexpr double kUnitaryTol = 1e-10;

double max_relative(const Vector& a, const Vector& b) {
  const double denom = b.norm();
  return denom > 0.0 ? (a - b).norm() / denom : (a - b).norm();
}

}  // namespace

ConstructingPair::ConstructingPair(LinearMap op, std::optional<LinearMap> basis)
    : op_(std::move(op)), op_inverse_(invert(op_)), basis_(std::move(basis)) {
  if (basis_) {
    if (basis_->dim() != op_.dim()) throw DimensionMismatch("basis and operator dimensions differ");
    const double defect = unitarity_defect(basis_->matrix());
    if (defect > kUnitaryTol) {
      std::ostringstream msg;
      msg << "explicit basis is not unitary, ||V*V - I||_F = " << defect;
      throw Error(msg.str());
    }
  }
}

Matrix ConstructingPair::basis_matrix() const {
  return basis_ ? basis_->matrix() : Matrix(Matrix::Identity(dim(), dim()));
}

KetVector ConstructingPair::basis_vector(Index n) const {
  if (!basis_) return KetVector::basis(dim(), n);
  return KetVector(Vector(basis_->matrix().col(n)));
}

Index BiorthogonalSystem::interior_count() const {
  const Index n = dim();
  if (interior_margin <= 0) return n;
  return std::clamp<Index>(n - interior_margin + 1, 1, n);
}

BiorthogonalSystem BiorthogonalSystem::from_families(std::vector<KetVector> phi,
                                                     std::vector<KetVector> psi, double tolerance,
                                                     Index interior_margin) {
  if (phi.size() != psi.size()) throw DimensionMismatch("phi and psi families differ in length");
  // columns() rejects mixed member dimensions.
  const Matrix p = columns(phi);
  const Matrix q = columns(psi);
  if (p.rows() != q.rows()) throw DimensionMismatch("phi and psi members differ in dimension");
  if (p.rows() != p.cols()) throw DimensionMismatch("family length must equal the space dimension");

  BiorthogonalSystem sys;
  sys.phi = std::move(phi);
  sys.psi = std::move(psi);
  sys.tolerance = tolerance;
  sys.interior_margin = interior_margin;
  sys.biorth_residual = biorthogonality_defect(sys.phi, sys.psi, sys.interior_count()).residual;
  sys.verified = sys.biorth_residual <= tolerance;
  return sys;
}

BiorthogonalityDefect biorthogonality_defect(std::span<const KetVector> phi,
                                             std::span<const KetVector> psi, Index count) {
  const Index n = std::min<Index>(count, static_cast<Index>(std::min(phi.size(), psi.size())));
  BiorthogonalityDefect worst;
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      const Complex g = inner(phi[static_cast<std::size_t>(k)], psi[static_cast<std::size_t>(l)]);
      const double dev = std::abs(g - (k == l ? 1.0 : 0.0));
      if (dev > worst.residual) worst = {dev, k, l};
    }
  }
  return worst;
}

BiorthogonalSystem build_system(const ConstructingPair& pair, double tolerance) {
  const Matrix e = pair.basis_matrix();
  const Matrix phi = pair.op().matrix() * e;
  const Matrix psi = pair.op_inverse().matrix().adjoint() * e;

  BiorthogonalSystem sys;
  sys.phi = column_vectors(phi);
  sys.psi = column_vectors(psi);
  sys.pair = pair;
  sys.tolerance = tolerance;
  sys.biorth_residual = biorthogonality_defect(sys.phi, sys.psi, sys.dim()).residual;
  sys.verified = sys.biorth_residual <= tolerance;
  return sys;
}

CheckReport check_biorthogonality(const BiorthogonalSystem& sys) {
  const BiorthogonalityDefect d = biorthogonality_defect(sys.phi, sys.psi, sys.interior_count());
  CheckReport r = CheckReport::make("biorthogonality", d.residual, sys.tolerance);
  r.details["indices_checked"] = static_cast<double>(sys.interior_count());
  r.details["offending_k"] = static_cast<double>(d.k);
  r.details["offending_l"] = static_cast<double>(d.l);
  return r;
}

LinearMap frame_operator(std::span<const KetVector> vectors) {
  if (vectors.empty()) throw DimensionMismatch("frame operator of an empty family");
  const Index dim = vectors.front().dim();
  Matrix k = Matrix::Zero(dim, dim);
  for (const KetVector& v : vectors) {
    if (v.dim() != dim) throw DimensionMismatch("family members have different dimensions");
    k.noalias() += v.coeffs() * v.coeffs().adjoint();
  }
  return LinearMap(std::move(k)).certified();
}

FrameOperators frame_operators(const BiorthogonalSystem& sys) {
  LinearMap k_phi = frame_operator(sys.phi);
  LinearMap k_psi = frame_operator(sys.psi);
  LinearMap k_phi_sqrt = operator_sqrt(k_phi);
  LinearMap k_psi_sqrt = operator_sqrt(k_psi);
  return {std::move(k_phi), std::move(k_psi), std::move(k_phi_sqrt), std::move(k_psi_sqrt)};
}

CheckReport verify_K_relations(const BiorthogonalSystem& sys, const FrameOperators& ops,
                               double tolerance) {
  const Matrix& kphi = ops.K_phi.matrix();
  const Matrix& kpsi = ops.K_psi.matrix();
  double phi_from_psi = 0.0, psi_from_phi = 0.0, psi_round_trip = 0.0, phi_round_trip = 0.0;
  for (Index k = 0; k < sys.interior_count(); ++k) {
    const Vector& phi = sys.phi[static_cast<std::size_t>(k)].coeffs();
    const Vector& psi = sys.psi[static_cast<std::size_t>(k)].coeffs();
    phi_from_psi = std::max(phi_from_psi, max_relative(kphi * psi, phi));
    psi_from_phi = std::max(psi_from_phi, max_relative(kpsi * phi, psi));
    psi_round_trip = std::max(psi_round_trip, max_relative(kpsi * (kphi * psi), psi));
    phi_round_trip = std::max(phi_round_trip, max_relative(kphi * (kpsi * phi), phi));
  }
  const Index n = sys.interior_count();
  const Matrix prod = (kphi * kpsi).topLeftCorner(n, n);
  const double identity = relative_fro(prod, Matrix::Identity(n, n));

  const double worst = std::max({phi_from_psi, psi_from_phi, psi_round_trip, phi_round_trip, identity});
  CheckReport r = CheckReport::make("k_relations", worst, tolerance);
  r.details["phi_eq_Kphi_psi"] = phi_from_psi;
  r.details["psi_eq_Kpsi_phi"] = psi_from_phi;
  r.details["psi_eq_Kpsi_Kphi_psi"] = psi_round_trip;
  r.details["phi_eq_Kphi_Kpsi_phi"] = phi_round_trip;
  r.details["Kphi_Kpsi_eq_I"] = identity;
  return r;
}

OnbReconstruction reconstruct_onb(const BiorthogonalSystem& sys, const FrameOperators& ops,
                                  double tolerance) {
  const Index n = sys.interior_count();
  const Matrix e = ops.K_phi_sqrt.matrix() * sys.psi_matrix();
  const Matrix e_prime = ops.K_psi_sqrt.matrix() * sys.phi_matrix();

  const Matrix eye = Matrix::Identity(n, n);
  const Matrix ge = e.leftCols(n).adjoint() * e.leftCols(n);
  const Matrix gp = e_prime.leftCols(n).adjoint() * e_prime.leftCols(n);
  const double gram_e = (ge - eye).cwiseAbs().maxCoeff();
  const double gram_p = (gp - eye).cwiseAbs().maxCoeff();
  double cross = 0.0;
  for (Index k = 0; k < n; ++k) cross = std::max(cross, (e.col(k) - e_prime.col(k)).norm());

  OnbReconstruction out{column_vectors(e), column_vectors(e_prime), {}};
  out.report = CheckReport::make("onb_reconstruction", std::max({gram_e, gram_p, cross}), tolerance);
  out.report.details["gram_from_psi"] = gram_e;
  out.report.details["gram_from_phi"] = gram_p;
  out.report.details["cross"] = cross;
  return out;
}

CheckReport verify_clause_i3(const BiorthogonalSystem& sys, const FrameOperators& ops,
                             std::span<const KetVector> samples, double tolerance) {
  if (samples.empty()) throw Error("square-root inverse check needs at least one sample vector");
  const Matrix m = ops.K_phi_sqrt.matrix().adjoint() * ops.K_psi_sqrt.matrix();
  double worst = 0.0;
  for (const KetVector& x : samples) {
    if (x.dim() != sys.dim()) throw DimensionMismatch("sample dimension differs from system");
    worst = std::max(worst, max_relative(m * x.coeffs(), x.coeffs()));
  }
  CheckReport r = CheckReport::make("clause_i3", worst, tolerance);
  r.details["samples"] = static_cast<double>(samples.size());
  return r;
}

NormalizedPair normalize_pair(const ConstructingPair& pair) {
  PolarFactors polar = polar_decompose(pair.op());
  // With an explicit basis V, T V e_n = P (U V) e_n.
  LinearMap f = pair.basis() ? polar.unitary_part * *pair.basis() : polar.unitary_part;
  ConstructingPair normalized(polar.positive_part, f);
  return {std::move(normalized), std::move(f)};
}

CheckReport verify_polar_normalization(const ConstructingPair& pair, double tolerance) {
  const NormalizedPair np = normalize_pair(pair);
  const Matrix target = pair.op().matrix() * pair.basis_matrix();
  const Matrix rebuilt = np.pair_normalized.op().matrix() * np.f_basis.matrix();
  double reassembly = 0.0;
  for (Index k = 0; k < target.cols(); ++k)
    reassembly = std::max(reassembly, max_relative(rebuilt.col(k), target.col(k)));
  const Matrix& u = np.f_basis.matrix();
  const double gram = (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();

  CheckReport r = CheckReport::make("polar", std::max(reassembly, gram), tolerance);
  r.details["reassembly"] = reassembly;
  r.details["f_gram"] = gram;
  r.details["positive_part_hermitian_defect"] = hermitian_defect(np.pair_normalized.op().matrix());
  return r;
}

}  // namespace rieszlab
