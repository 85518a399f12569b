#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rieszlab/operator_core.hpp"

namespace rieszlab {

// Seeded source of sample vectors and test operators.
//
// Draws only raw 64-bit words from mt19937_64 and converts them itself, so a
// given seed produces the same numbers with every standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1].
  double uniform();
  double normal();
  // Real and imaginary parts independent standard normals.
  Complex complex_normal();

  KetVector random_ket(Index dim);
  KetVector random_unit_ket(Index dim);
  std::vector<KetVector> kets(Index dim, std::size_t count);
  std::vector<std::pair<KetVector, KetVector>> ket_pairs(Index dim, std::size_t count);

  // Haar-distributed unitary (QR of a complex Ginibre matrix, phase-fixed).
  LinearMap random_unitary(Index dim);
  // W diag(s) V* with log-spaced singular values s in [1, cond].
  LinearMap random_with_cond(Index dim, double cond);
  // Positive self-adjoint W diag(s) W* with eigenvalues log-spaced in [1, cond].
  LinearMap random_positive(Index dim, double cond);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rieszlab
