#include "rieszlab/physical_operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rieszlab {

namespace {

void require_length(const AlphaSequence& alpha, Index dim) {
  if (alpha.size() < dim) {
    std::ostringstream msg;
    msg << "alpha sequence has " << alpha.size() << " values, need " << dim;
    throw DimensionMismatch(msg.str());
  }
}

Matrix power(const Matrix& m, int p) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

double vec_residual(const Vector& got, const Vector& want, double scale) {
  return (got - want).norm() / std::max(1.0, scale);
}

}  // namespace

std::string_view to_string(AlphaKind k) {
  switch (k) {
    case AlphaKind::sqrt_n: return "sqrt_n";
    case AlphaKind::linear: return "linear";
    case AlphaKind::custom: return "custom";
  }
  return "custom";
}

AlphaSequence AlphaSequence::sqrt_n(Index count, std::optional<double> r) {
  AlphaSequence a;
  a.kind = AlphaKind::sqrt_n;
  a.gap_bound_r = r;
  a.values.reserve(static_cast<std::size_t>(count));
  for (Index n = 0; n < count; ++n) a.values.emplace_back(std::sqrt(static_cast<double>(n)), 0.0);
  return a;
}

AlphaSequence AlphaSequence::linear(Index count, std::optional<double> r) {
  AlphaSequence a;
  a.kind = AlphaKind::linear;
  a.gap_bound_r = r;
  a.values.reserve(static_cast<std::size_t>(count));
  for (Index n = 0; n < count; ++n) a.values.emplace_back(static_cast<double>(n), 0.0);
  return a;
}

AlphaSequence AlphaSequence::custom(std::vector<Complex> values, std::optional<double> r) {
  AlphaSequence a;
  a.kind = AlphaKind::custom;
  a.gap_bound_r = r;
  a.values = std::move(values);
  return a;
}

bool AlphaSequence::is_real() const {
  return std::all_of(values.begin(), values.end(), [](Complex z) { return z.imag() == 0.0; });
}

AlphaSequence AlphaSequence::conjugate() const {
  AlphaSequence a = *this;
  for (Complex& z : a.values) z = std::conj(z);
  return a;
}

CheckReport validate_alpha(const AlphaSequence& alpha) {
  int violations = 0;
  Index first = -1;
  std::string reason;
  auto flag = [&](Index at, const char* why) {
    ++violations;
    if (first < 0) {
      first = at;
      reason = why;
    }
  };

  for (Index n = 0; n < alpha.size(); ++n)
    if (alpha[n].imag() != 0.0) flag(n, "complex value");
  if (alpha.size() > 0 && alpha[0].real() < 0.0) flag(0, "alpha_0 negative");
  for (Index n = 0; n + 1 < alpha.size(); ++n) {
    const double cur = alpha[n].real();
    const double nxt = alpha[n + 1].real();
    if (!(cur < nxt)) flag(n + 1, "not strictly increasing");
    if (alpha.gap_bound_r && nxt > cur + *alpha.gap_bound_r) flag(n + 1, "gap exceeds r");
  }

  CheckReport r = CheckReport::make("alpha", static_cast<double>(violations), 0.0);
  r.details["violations"] = static_cast<double>(violations);
  r.details["first_violation"] = static_cast<double>(first);
  r.details["length"] = static_cast<double>(alpha.size());
  if (alpha.gap_bound_r) r.details["r"] = *alpha.gap_bound_r;
  if (!reason.empty()) r.notes["first_violation_reason"] = reason;
  r.notes["kind"] = std::string(to_string(alpha.kind));
  return r;
}

LinearMap diag_hamiltonian(const AlphaSequence& alpha, Index dim) {
  require_length(alpha, dim);
  return LinearMap::diagonal(std::span<const Complex>(alpha.values.data(), static_cast<std::size_t>(dim)));
}

LadderPair ladder_operators(const AlphaSequence& alpha, Index dim) {
  require_length(alpha, dim);
  Matrix a = Matrix::Zero(dim, dim);
  Matrix b = Matrix::Zero(dim, dim);
  for (Index n = 0; n + 1 < dim; ++n) {
    a(n, n + 1) = alpha[n + 1];
    b(n + 1, n) = alpha[n + 1];
  }
  return {LinearMap(std::move(a)), LinearMap(std::move(b))};
}

LinearMap transform(const LinearMap& op_e, const LinearMap& t, Side side) {
  const LinearMap t_inv = invert(t);
  if (side == Side::phi_psi) return LinearMap(Matrix(t.matrix() * op_e.matrix() * t_inv.matrix()));
  return LinearMap(Matrix(t_inv.matrix().adjoint() * op_e.matrix() * t.matrix().adjoint()));
}

LinearMap transform(const LinearMap& op_e, const ConstructingPair& pair, Side side) {
  const Matrix& t = pair.op().matrix();
  const Matrix& t_inv = pair.op_inverse().matrix();
  if (side == Side::phi_psi) return LinearMap(Matrix(t * op_e.matrix() * t_inv));
  return LinearMap(Matrix(t_inv.adjoint() * op_e.matrix() * t.adjoint()));
}

OperatorSet build_operator_set(const ConstructingPair& pair, const AlphaSequence& alpha) {
  if (!pair.reference_basis())
    throw Error("operator sets are built on the reference basis; normalize the pair first");
  const Index n = pair.dim();
  LinearMap h = diag_hamiltonian(alpha, n);
  LadderPair ladder = ladder_operators(alpha, n);
  return OperatorSet{
      h,
      ladder.lowering,
      ladder.raising,
      transform(h, pair, Side::phi_psi),
      transform(h, pair, Side::psi_phi),
      transform(ladder.lowering, pair, Side::phi_psi),
      transform(ladder.raising, pair, Side::phi_psi),
      transform(ladder.lowering, pair, Side::psi_phi),
      transform(ladder.raising, pair, Side::psi_phi),
      alpha,
      pair,
  };
}

LinearMap sum_form_hamiltonian(const BiorthogonalSystem& sys, const AlphaSequence& alpha, Side side) {
  if (sys.phi.size() != sys.psi.size()) throw DimensionMismatch("phi and psi families differ in length");
  const Index n = sys.dim();
  require_length(alpha, n);
  const auto& left = side == Side::phi_psi ? sys.phi : sys.psi;
  const auto& right = side == Side::phi_psi ? sys.psi : sys.phi;
  const Index dim = left.front().dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (left[i].dim() != dim || right[i].dim() != dim) throw DimensionMismatch("family member dimension differs");
    h.noalias() += alpha[k] * (left[i].coeffs() * right[i].coeffs().adjoint());
  }
  return LinearMap(std::move(h));
}

CheckReport hamiltonian_agreement_check(const BiorthogonalSystem& sys, const AlphaSequence& alpha,
                                        double tolerance) {
  if (!sys.pair) throw Error("Hamiltonian agreement needs a system built from a constructing pair");
  const ConstructingPair& pair = *sys.pair;
  if (!pair.reference_basis()) throw Error("Hamiltonian agreement expects the reference basis");
  const LinearMap h = diag_hamiltonian(alpha, sys.dim());
  const double phi_psi = relative_fro(sum_form_hamiltonian(sys, alpha, Side::phi_psi).matrix(),
                                      transform(h, pair, Side::phi_psi).matrix());
  const double psi_phi = relative_fro(sum_form_hamiltonian(sys, alpha, Side::psi_phi).matrix(),
                                      transform(h, pair, Side::psi_phi).matrix());
  CheckReport r = CheckReport::make("hamiltonian_agreement", std::max(phi_psi, psi_phi), tolerance);
  r.details["phi_psi"] = phi_psi;
  r.details["psi_phi"] = psi_phi;
  return r;
}

CheckReport eigen_check(const LinearMap& h, std::span<const KetVector> vectors,
                        const AlphaSequence& alpha, double tolerance, Index count) {
  const Index n = count < 0 ? static_cast<Index>(vectors.size())
                            : std::min<Index>(count, static_cast<Index>(vectors.size()));
  require_length(alpha, n);
  double worst = 0.0;
  Index at = 0;
  for (Index k = 0; k < n; ++k) {
    const KetVector& v = vectors[static_cast<std::size_t>(k)];
    if (v.dim() != h.dim()) throw DimensionMismatch("eigenvector dimension differs from operator");
    const double res = vec_residual(h.matrix() * v.coeffs(), alpha[k] * v.coeffs(), v.norm());
    if (res > worst) {
      worst = res;
      at = k;
    }
  }
  CheckReport r = CheckReport::make("eigen", worst, tolerance);
  r.details["indices_checked"] = static_cast<double>(n);
  r.details["worst_index"] = static_cast<double>(at);
  return r;
}

CheckReport ladder_check(const LinearMap& a, const LinearMap& b, std::span<const KetVector> vectors,
                         const AlphaSequence& alpha, double tolerance, Index count) {
  const Index total = static_cast<Index>(vectors.size());
  const Index n = count < 0 ? total : std::min(count, total);
  require_length(alpha, std::min(total, n + 1));
  auto vec = [&](Index k) -> const Vector& { return vectors[static_cast<std::size_t>(k)].coeffs(); };

  double ground = 0.0, lowering = 0.0, raising = 0.0, edge = 0.0;
  if (n > 0) ground = (a.matrix() * vec(0)).norm() / std::max(1.0, vec(0).norm());
  for (Index k = 1; k < n; ++k)
    lowering = std::max(lowering, vec_residual(a.matrix() * vec(k), alpha[k] * vec(k - 1), vec(k).norm()));
  for (Index k = 0; k < std::min(n, total - 1); ++k)
    raising = std::max(raising, vec_residual(b.matrix() * vec(k), alpha[k + 1] * vec(k + 1), vec(k).norm()));
  if (total > 0) edge = (b.matrix() * vec(total - 1)).norm() / std::max(1.0, vec(total - 1).norm());

  CheckReport r = CheckReport::make("ladder", std::max({ground, lowering, raising}), tolerance);
  r.details["lowering_ground"] = ground;
  r.details["lowering"] = lowering;
  r.details["raising"] = raising;
  r.details["raising_edge"] = edge;
  r.details["indices_checked"] = static_cast<double>(n);
  return r;
}

CheckReport adjoint_relation_check(const OperatorSet& set, double tolerance) {
  const OperatorSet bar = build_operator_set(set.pair, set.alpha.conjugate());
  auto rel = [](const LinearMap& lhs, const LinearMap& rhs) {
    return relative_fro(adjoint(lhs).matrix(), rhs.matrix());
  };
  const double h_psi = rel(set.H_psi_phi, bar.H_phi_psi);
  const double h_phi = rel(set.H_phi_psi, bar.H_psi_phi);
  const double a_phi = rel(set.A_phi_psi, bar.B_psi_phi);
  const double b_phi = rel(set.B_phi_psi, bar.A_psi_phi);
  const double a_psi = rel(set.A_psi_phi, bar.B_phi_psi);
  const double b_psi = rel(set.B_psi_phi, bar.A_phi_psi);

  CheckReport r = CheckReport::make("adjoint_relation",
                                    std::max({h_psi, h_phi, a_phi, b_phi, a_psi, b_psi}), tolerance);
  r.details["H_psi_phi"] = h_psi;
  r.details["H_phi_psi"] = h_phi;
  r.details["A_phi_psi_to_B_psi_phi"] = a_phi;
  r.details["B_phi_psi_to_A_psi_phi"] = b_phi;
  r.details["A_psi_phi_to_B_phi_psi"] = a_psi;
  r.details["B_psi_phi_to_A_phi_psi"] = b_psi;
  // Lowering paired with lowering is not an adjoint identity; kept visible.
  r.details["A_phi_psi_to_A_psi_phi_unpaired"] = rel(set.A_phi_psi, bar.A_psi_phi);
  return r;
}

CheckReport product_identity_check(const OperatorSet& set, int m, int l, double tolerance) {
  if (m < 0 || l < 0 || m + l > kMaxProductPower) {
    std::ostringstream msg;
    msg << "product powers must satisfy 0 <= m, l and m + l <= " << kMaxProductPower;
    throw Error(msg.str());
  }
  const Matrix& t = set.pair.op().matrix();
  const Matrix& t_inv = set.pair.op_inverse().matrix();
  const Matrix t_adj = t.adjoint();
  const Matrix t_adj_inv = t_inv.adjoint();
  const Matrix& ae = set.A_e.matrix();
  const Matrix& be = set.B_e.matrix();

  const Matrix ab_e = power(ae, m) * power(be, l);
  const Matrix ba_e = power(be, m) * power(ae, l);

  const double phi_ab = relative_fro(power(set.A_phi_psi.matrix(), m) * power(set.B_phi_psi.matrix(), l),
                                     t * ab_e * t_inv);
  const double phi_ba = relative_fro(power(set.B_phi_psi.matrix(), m) * power(set.A_phi_psi.matrix(), l),
                                     t * ba_e * t_inv);
  const double psi_ab = relative_fro(power(set.A_psi_phi.matrix(), m) * power(set.B_psi_phi.matrix(), l),
                                     t_adj_inv * ab_e * t_adj);
  const double psi_ba = relative_fro(power(set.B_psi_phi.matrix(), m) * power(set.A_psi_phi.matrix(), l),
                                     t_adj_inv * ba_e * t_adj);
  // Crossing the two sides does not collapse: A_{psi,phi} B_{phi,psi} = (T*)^{-1} A_e T* T B_e T^{-1}.
  const double mixed = relative_fro(set.A_psi_phi.matrix() * set.B_phi_psi.matrix(),
                                    t_adj_inv * ae * t_adj * t * be * t_inv);

  CheckReport r = CheckReport::make("product_identity", std::max({phi_ab, phi_ba, psi_ab, psi_ba, mixed}),
                                    tolerance);
  r.details["phi_psi_AmBl"] = phi_ab;
  r.details["phi_psi_BmAl"] = phi_ba;
  r.details["psi_phi_AmBl"] = psi_ab;
  r.details["psi_phi_BmAl"] = psi_ba;
  r.details["mixed_A_psi_phi_B_phi_psi"] = mixed;
  r.details["m"] = m;
  r.details["l"] = l;
  return r;
}

CheckReport ccr_check(const AlphaSequence& alpha, Index dim, const ConstructingPair* pair,
                      double interior_tol, double transformed_tol) {
  if (alpha.kind != AlphaKind::sqrt_n) throw WrongAlphaKind("CCR check requires alpha_n = sqrt(n)");
  if (dim < 2) throw DimensionMismatch("CCR check needs dimension >= 2");
  const LadderPair ladder = ladder_operators(alpha, dim);
  const Matrix& a = ladder.lowering.matrix();
  const Matrix& b = ladder.raising.matrix();
  const Matrix c = a * b - b * a;
  const Matrix eye = Matrix::Identity(dim, dim);

  const double interior = (c - eye).leftCols(dim - 1).cwiseAbs().maxCoeff();
  Matrix defect_form = eye;
  defect_form(dim - 1, dim - 1) -= static_cast<double>(dim);
  const double edge = (c - defect_form).cwiseAbs().maxCoeff();

  double normalized = std::max(interior, edge) / interior_tol;
  CheckReport r;
  r.details["interior"] = interior;
  r.details["edge_defect"] = edge;
  r.details["edge_diagonal"] = c(dim - 1, dim - 1).real();

  if (pair) {
    if (pair->dim() != dim) throw DimensionMismatch("pair dimension differs from CCR dimension");
    const Matrix& t = pair->op().matrix();
    const Matrix& t_inv = pair->op_inverse().matrix();
    const Matrix at = t * a * t_inv;
    const Matrix bt = t * b * t_inv;
    const Matrix ct = at * bt - bt * at;
    const Matrix phi = t * pair->basis_matrix();
    double transformed = 0.0;
    for (Index k = 0; k + 1 < dim; ++k)
      transformed = std::max(transformed, (ct * phi.col(k) - phi.col(k)).norm() / phi.col(k).norm());
    const double cond = pair->cond();
    const double bound = transformed_tol * cond * cond;
    normalized = std::max(normalized, transformed / bound);
    r.details["transformed_interior"] = transformed;
    r.details["transformed_bound"] = bound;
    r.details["transformed_vs_similarity"] = relative_fro(ct, t * c * t_inv);
  }
  r.name = "ccr";
  r.residual = normalized;
  r.tolerance = 1.0;
  r.finalize();
  return r;
}

CheckReport domain_mapping_check(const LinearMap& t, const LinearMap& op_e, Side side, double tolerance) {
  if (t.dim() != op_e.dim()) throw DimensionMismatch("operator dimensions differ");
  const LinearMap t_inv = invert(t);
  const LinearMap mapped = transform(op_e, t, side);
  // Image basis and the map carrying op_e's output into the image space.
  const Matrix carrier = side == Side::phi_psi ? t.matrix() : Matrix(t_inv.matrix().adjoint());
  const double op_norm = op_e.norm_fro();
  double worst = 0.0;
  for (Index n = 0; n < t.dim(); ++n) {
    const Vector image = carrier.col(n);
    const Vector lhs = mapped.matrix() * image;
    const Vector rhs = carrier * op_e.matrix().col(n);
    const double scale = rhs.norm() + op_norm * image.norm();
    worst = std::max(worst, scale > 0.0 ? (lhs - rhs).norm() / scale : (lhs - rhs).norm());
  }
  CheckReport r = CheckReport::make("domain_mapping", worst, tolerance);
  r.details["amplification"] = t_inv.cond_estimate().value_or(std::numeric_limits<double>::infinity());
  r.notes["direction"] = side == Side::phi_psi ? "phi_psi" : "psi_phi";
  return r;
}

}  // namespace rieszlab
