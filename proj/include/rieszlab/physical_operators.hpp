#pragma once

// Hamiltonians and ladder operators attached to a constructing pair:
// the diagonal operators H_e, A_e, B_e for an eigenvalue sequence alpha and
// their transforms T(.)T^{-1} (phi,psi side) and (T*)^{-1}(.)T* (psi,phi side).

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rieszlab/operator_core.hpp"
#include "rieszlab/report.hpp"
#include "rieszlab/riesz_systems.hpp"

namespace rieszlab {

enum class AlphaKind { sqrt_n, linear, custom };
std::string_view to_string(AlphaKind k);

struct AlphaSequence {
  std::vector<Complex> values;
  std::optional<double> gap_bound_r;
  AlphaKind kind = AlphaKind::custom;

  // alpha_n = sqrt(n), n = 0..count-1.
  static AlphaSequence sqrt_n(Index count, std::optional<double> r = 1.0);
  // alpha_n = n.
  static AlphaSequence linear(Index count, std::optional<double> r = 1.0);
  static AlphaSequence custom(std::vector<Complex> values, std::optional<double> r = std::nullopt);

  Index size() const { return static_cast<Index>(values.size()); }
  Complex operator[](Index n) const { return values[static_cast<std::size_t>(n)]; }
  bool is_real() const;
  // Entrywise conjugate; keeps kind and r.
  AlphaSequence conjugate() const;
};

enum class Side { phi_psi, psi_phi };

struct OperatorSet {
  LinearMap H_e, A_e, B_e;
  LinearMap H_phi_psi, H_psi_phi;
  LinearMap A_phi_psi, B_phi_psi;
  LinearMap A_psi_phi, B_psi_phi;
  AlphaSequence alpha;
  ConstructingPair pair;
};

// Monotonicity 0 <= alpha_0 < alpha_1 < ... and the gap bound
// alpha_{n+1} <= alpha_n + r. The residual counts violated constraints.
CheckReport validate_alpha(const AlphaSequence& alpha);

LinearMap diag_hamiltonian(const AlphaSequence& alpha, Index dim);

struct LadderPair {
  LinearMap lowering;  // A_e: e_n -> alpha_n e_{n-1}
  LinearMap raising;   // B_e: e_n -> alpha_{n+1} e_{n+1}, e_{N-1} -> 0
};
LadderPair ladder_operators(const AlphaSequence& alpha, Index dim);

// phi_psi: T op T^{-1}; psi_phi: (T*)^{-1} op T*.
LinearMap transform(const LinearMap& op_e, const LinearMap& t, Side side);
LinearMap transform(const LinearMap& op_e, const ConstructingPair& pair, Side side);

OperatorSet build_operator_set(const ConstructingPair& pair, const AlphaSequence& alpha);

// sum_n alpha_n |phi_n><psi_n| (phi_psi) or sum_n alpha_n |psi_n><phi_n| (psi_phi).
LinearMap sum_form_hamiltonian(const BiorthogonalSystem& sys, const AlphaSequence& alpha,
                               Side side = Side::phi_psi);

// Sum form against similarity form, both sides, relative Frobenius.
CheckReport hamiltonian_agreement_check(const BiorthogonalSystem& sys, const AlphaSequence& alpha,
                                        double tolerance = 1e-9);

// max_k |H v_k - alpha_k v_k| / max(1, |v_k|) over the first `count` vectors
// (all when count is negative).
CheckReport eigen_check(const LinearMap& h, std::span<const KetVector> vectors,
                        const AlphaSequence& alpha, double tolerance = 1e-8, Index count = -1);

// Lowering and raising actions on a family. The raising action on the last
// vector has no partner and is reported separately as "raising_edge".
CheckReport ladder_check(const LinearMap& a, const LinearMap& b, std::span<const KetVector> vectors,
                         const AlphaSequence& alpha, double tolerance = 1e-9, Index count = -1);

// In finite dimension the adjoint inclusions are equalities:
//   (H_{psi,phi}^alpha)* = H_{phi,psi}^conj(alpha)
//   (A_{phi,psi}^alpha)* = B_{psi,phi}^conj(alpha)
//   (B_{phi,psi}^alpha)* = A_{psi,phi}^conj(alpha)
CheckReport adjoint_relation_check(const OperatorSet& set, double tolerance = 1e-9);

inline constexpr int kMaxProductPower = 8;

// Products of transformed ladder operators against the transformed products
// of A_e, B_e, on both sides, plus the mixed product A_{psi,phi} B_{phi,psi}.
// Throws Error when m + l exceeds kMaxProductPower.
CheckReport product_identity_check(const OperatorSet& set, int m, int l, double tolerance = 1e-10);

// Commutator A_e B_e - B_e A_e for alpha_n = sqrt(n): identity on
// span{e_0..e_{N-2}}, exactly I - N P_{N-1} overall. With a pair, the
// transformed commutator must act as the identity on phi_0..phi_{N-2} within
// transformed_tol * cond(T)^2. The residual is in units of the tolerance of
// each part, so the report tolerance is 1.
CheckReport ccr_check(const AlphaSequence& alpha, Index dim,
                      const ConstructingPair* pair = nullptr, double interior_tol = 1e-12,
                      double transformed_tol = 1e-10);

// transform(op_e, T, side) applied to the image basis reproduces the image of
// op_e e_n. Reports cond(T) as "amplification".
CheckReport domain_mapping_check(const LinearMap& t, const LinearMap& op_e, Side side,
                                 double tolerance = 1e-9);

}  // namespace rieszlab
