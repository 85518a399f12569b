#pragma once

// Sesquilinear forms built from vector families, the checks that tie them to
// the frame operators, and partial-sum diagnostics that stand in for domain
// membership at finite truncation.

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rieszlab/operator_core.hpp"
#include "rieszlab/report.hpp"
#include "rieszlab/riesz_systems.hpp"

namespace rieszlab {

using KetPair = std::pair<KetVector, KetVector>;

struct FormEvaluation {
  Complex value{0.0, 0.0};
  Index terms_used = 0;
  std::optional<std::vector<Complex>> partial_sums;
};

// Omega(x, y) = sum_k <x, v_k><v_k, y>.
FormEvaluation omega(const KetVector& x, const KetVector& y, std::span<const KetVector> family,
                     bool keep_partial_sums = false);

// sum_k <x, left_k><right_k, y>; omega_mixed(x, y, phi, psi) is Omega_{phi,psi}.
FormEvaluation omega_mixed(const KetVector& x, const KetVector& y, std::span<const KetVector> left,
                           std::span<const KetVector> right, bool keep_partial_sums = false);

// |Omega(x, y) - <K^{1/2} x, K^{1/2} y>|, passing when <= tolerance * (1 + |Omega|).
CheckReport verify_representation(const KetVector& x, const KetVector& y,
                                  std::span<const KetVector> family, const LinearMap& k_sqrt,
                                  double tolerance = 1e-9);

// Same check over many pairs; the residual is the worst scaled deviation
// |Omega - <K^{1/2}x, K^{1/2}y>| / (1 + |Omega|).
CheckReport verify_representation(std::span<const KetPair> samples, std::span<const KetVector> family,
                                  const LinearMap& k_sqrt, double tolerance = 1e-9);

// Both orderings of the resolution of identity sum <x,phi_n><psi_n,y> = <x,y>.
CheckReport quasi_basis_residual(const BiorthogonalSystem& sys, std::span<const KetPair> samples,
                                 double tolerance = 1e-9);

struct FrameBounds {
  double lower = 0.0;  // c = lambda_min(K)
  double upper = 0.0;  // C = lambda_max(K)
};

// Throws NotPositive when K has an eigenvalue below -1e-10 lambda_max.
FrameBounds frame_bounds(const LinearMap& k);

// Worst relative violation of c|x|^2 <= Omega(x,x) <= C|x|^2 over the samples.
CheckReport frame_bounds_sandwich(std::span<const KetVector> family, const LinearMap& k,
                                  std::span<const KetVector> samples, double tolerance = 1e-10);

enum class TailClass { convergent, divergent, inconclusive };
std::string_view to_string(TailClass c);

struct TailDiagnostic {
  std::vector<Index> truncations;
  std::vector<double> partial_sums;  // S_N = sum_{k<N} w_k |<x, v_k>|^2
  TailClass classification = TailClass::inconclusive;
  double growth_exponent = 0.0;
};

// Builds x in a space of the requested dimension.
using KetGenerator = std::function<KetVector(Index dim)>;
// Returns the first `count` family members; all share one dimension >= count.
using FamilyGenerator = std::function<std::vector<KetVector>(Index count)>;
using WeightSequence = std::function<double(Index k)>;

inline constexpr double kConvergentTailRatio = 1e-3;
inline constexpr double kDivergentExponent = 0.5;
inline constexpr double kPrefixTolerance = 1e-6;

std::vector<Index> default_tail_grid();

// Throws InconsistentPrefix when a smaller truncation disagrees with a larger
// one on shared indices by more than 1e-6 relative.
TailDiagnostic tail_diagnostic(const KetGenerator& x, const FamilyGenerator& family,
                               std::span<const Index> grid, const WeightSequence& weights = {});

}  // namespace rieszlab
