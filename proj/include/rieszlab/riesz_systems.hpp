#pragma once

// Biorthogonal systems generated by a constructing pair (F_e, T):
// phi_n = T e_n and the canonical dual psi_n = (T^{-1})* e_n, together with
// the frame operators K_phi, K_psi and the orthonormal basis recovered from
// their square roots.

#include <optional>
#include <span>
#include <vector>

#include "rieszlab/operator_core.hpp"
#include "rieszlab/report.hpp"

namespace rieszlab {

// (F_e, T). F_e is the reference basis unless an explicit unitary is given,
// in which case e_n is its n-th column.
class ConstructingPair {
 public:
  // Throws NumericallySingular when T is not invertible and
  // DimensionMismatch / Error when the basis is not a unitary of matching size.
  explicit ConstructingPair(LinearMap op, std::optional<LinearMap> basis = std::nullopt);

  Index dim() const { return op_.dim(); }
  const LinearMap& op() const { return op_; }
  const LinearMap& op_inverse() const { return op_inverse_; }
  const std::optional<LinearMap>& basis() const { return basis_; }
  bool reference_basis() const { return !basis_.has_value(); }
  double cond() const { return op_inverse_.cond_estimate().value_or(0.0); }

  Matrix basis_matrix() const;
  KetVector basis_vector(Index n) const;

 private:
  LinearMap op_;
  LinearMap op_inverse_;
  std::optional<LinearMap> basis_;
};

struct BiorthogonalSystem {
  std::vector<KetVector> phi;
  std::vector<KetVector> psi;
  std::optional<ConstructingPair> pair;  // absent for user-supplied families
  double biorth_residual = 0.0;
  double tolerance = 1e-8;
  bool verified = false;
  // Truncations of infinite-dimensional models only trust indices
  // k <= N - interior_margin. Zero means every index is trusted.
  Index interior_margin = 0;

  Index dim() const { return static_cast<Index>(phi.size()); }
  Index interior_count() const;
  Matrix phi_matrix() const { return columns(phi); }
  Matrix psi_matrix() const { return columns(psi); }

  // Wraps externally supplied families and computes their residual.
  static BiorthogonalSystem from_families(std::vector<KetVector> phi, std::vector<KetVector> psi,
                                          double tolerance = 1e-8, Index interior_margin = 0);
};

struct FrameOperators {
  LinearMap K_phi;
  LinearMap K_psi;
  LinearMap K_phi_sqrt;
  LinearMap K_psi_sqrt;
};

struct OnbReconstruction {
  std::vector<KetVector> e_from_psi;  // K_phi^{1/2} psi_n
  std::vector<KetVector> e_from_phi;  // K_psi^{1/2} phi_n
  CheckReport report;
};

struct NormalizedPair {
  ConstructingPair pair_normalized;  // (F_f, P) with P positive
  LinearMap f_basis;                 // U, so f_n = U e_n
};

// Largest |<phi_k, psi_l> - delta_kl| over k, l < count, with its location.
struct BiorthogonalityDefect {
  double residual = 0.0;
  Index k = 0;
  Index l = 0;
};
BiorthogonalityDefect biorthogonality_defect(std::span<const KetVector> phi,
                                             std::span<const KetVector> psi, Index count);

BiorthogonalSystem build_system(const ConstructingPair& pair, double tolerance = 1e-8);

CheckReport check_biorthogonality(const BiorthogonalSystem& sys);

// Sum of outer products |v_k><v_k|.
LinearMap frame_operator(std::span<const KetVector> vectors);

FrameOperators frame_operators(const BiorthogonalSystem& sys);

CheckReport verify_K_relations(const BiorthogonalSystem& sys, const FrameOperators& ops,
                               double tolerance = 1e-8);

OnbReconstruction reconstruct_onb(const BiorthogonalSystem& sys, const FrameOperators& ops,
                                  double tolerance = 1e-9);

// (K_phi^{1/2})* K_psi^{1/2} x = x on every sample: the two square roots are
// mutually inverse.
CheckReport verify_clause_i3(const BiorthogonalSystem& sys, const FrameOperators& ops,
                             std::span<const KetVector> samples, double tolerance = 1e-9);

NormalizedPair normalize_pair(const ConstructingPair& pair);

// Reassembly P (U e_n) = T e_n and orthonormality of {U e_n}.
CheckReport verify_polar_normalization(const ConstructingPair& pair, double tolerance = 1e-9);

}  // namespace rieszlab
