#pragma once

// Multiplication by 1 + x^2 on L^2(R), written in the Hermite-function basis
// e_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)), truncated to N
// functions, with a Gauss-Hermite quadrature oracle for its matrix elements.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rieszlab/forms.hpp"
#include "rieszlab/operator_core.hpp"
#include "rieszlab/report.hpp"
#include "rieszlab/riesz_systems.hpp"

namespace rieszlab::hermite {

// Largest index accepted by hermite_function and checked by the oracle.
inline constexpr Index kMaxIndex = 200;
// Oracle agreement required before X is trusted.
inline constexpr double kOracleTolerance = 1e-9;

// e_n(x) by the normalized three-term recurrence. Throws IndexTooLarge for n > kMaxIndex.
double hermite_function(Index n, double x);

// e_0(x) .. e_{count-1}(x). Rescales internally so it neither overflows nor
// loses the tail where exp(-x^2/2) alone would underflow.
std::vector<double> hermite_functions(Index count, double x);

// Gauss-Hermite rule for integrals of f(x) exp(-x^2). Stores w_i exp(x_i^2)
// so Hermite-function integrands sum without underflow:
//   int g(x) dx ~= sum_i scaled_weights[i] * g(nodes[i]).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> scaled_weights;

  Index order() const { return static_cast<Index>(nodes.size()); }
  double integrate(const std::function<double(double)>& g) const;
};

GaussHermiteRule gauss_hermite(Index order);

enum class Multiplier { one, one_plus_x2, inv_one_plus_x2, one_plus_x2_squared, inv_one_plus_x2_squared };
double multiplier_value(Multiplier m, double x);

// Default rule order for indices up to max(m, n): 4 (max + 1), at least m + n + 4.
Index default_order(Index m, Index n);

// int e_m(x) mult(x) e_n(x) dx. order <= 0 picks default_order(m, n).
double quadrature_inner_product(Index m, Index n, Multiplier mult, Index order = 0);

struct QuadratureEstimate {
  double value = 0.0;      // rule of the requested order
  double refined = 0.0;    // rule of twice that order
  double deviation = 0.0;  // |value - refined|
};
// Doubling-based self-consistency check for non-polynomial multipliers.
QuadratureEstimate quadrature_inner_product_checked(Index m, Index n, Multiplier mult, Index order = 0);

// Pentadiagonal truncation: X[n][n] = n + 3/2, X[n][n+2] = sqrt((n+1)(n+2))/2.
LinearMap x_matrix_formula(Index dim);

struct HermiteModel {
  Index dim = 0;
  LinearMap X = LinearMap::identity(1);
  GaussHermiteRule rule;
  double oracle_residual = 0.0;  // max entry deviation from quadrature
  Index oracle_max_index = 0;    // entries with both indices <= this were checked
};

// Builds X and checks every entry with indices <= kMaxIndex against quadrature.
// Throws OracleMismatch when an entry deviates by more than kOracleTolerance.
HermiteModel build_model(Index dim);
LinearMap build_X(Index dim);

// phi_n = X e_n, psi_n = X^{-1} e_n, trusted on indices <= N - margin.
// margin < 0 selects N / 2.
BiorthogonalSystem build_example_system(Index dim, Index margin = -1, double tolerance = 1e-8);

// Frame operators of the example against X^2 and X^{-2} on the interior block,
// the psi form against <X^{-1} f, X^{-1} g>, and the interior of K_phi against
// quadrature of (1 + x^2)^2.
CheckReport verify_K_psi(Index dim, Index margin = -1, double tolerance = 1e-6, std::uint64_t seed = 7);

// Frame bounds (c, C) of the phi family at each dimension.
struct FrameBoundGrowth {
  std::vector<Index> dims;
  std::vector<double> lower;
  std::vector<double> upper;
};
FrameBoundGrowth frame_bound_growth(std::span<const Index> dims);

// c(N) >= 1, C strictly increasing, and C(N_last) / C(N_prev) > 3.
CheckReport frame_growth_check(std::span<const Index> dims);

// Family generator for the tail diagnostic: phi_k = X e_k for k < count, as
// complete columns (dimension count + 2, since X is pentadiagonal).
FamilyGenerator phi_family();
// x with coefficients c(n) in the reference basis.
KetGenerator coefficient_ket(std::function<double(Index)> c);

// 1/(n+1) must classify divergent and 2^{-n} convergent.
CheckReport tail_dichotomy_check(std::span<const Index> grid);

}  // namespace rieszlab::hermite
