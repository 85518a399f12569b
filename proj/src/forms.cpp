#include "rieszlab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rieszlab {

namespace {

void require_same_dim(const KetVector& x, const KetVector& y, std::span<const KetVector> family) {
  if (x.dim() != y.dim()) throw DimensionMismatch("form arguments differ in dimension");
  for (const KetVector& v : family)
    if (v.dim() != x.dim()) throw DimensionMismatch("family member dimension differs from arguments");
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

}  // namespace

FormEvaluation omega_mixed(const KetVector& x, const KetVector& y, std::span<const KetVector> left,
                           std::span<const KetVector> right, bool keep_partial_sums) {
  if (left.size() != right.size()) throw DimensionMismatch("form families differ in length");
  require_same_dim(x, y, left);
  require_same_dim(x, y, right);
  FormEvaluation out;
  if (keep_partial_sums) out.partial_sums.emplace().reserve(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    out.value += inner(x, left[k]) * inner(right[k], y);
    if (keep_partial_sums) out.partial_sums->push_back(out.value);
  }
  out.terms_used = static_cast<Index>(left.size());
  return out;
}

FormEvaluation omega(const KetVector& x, const KetVector& y, std::span<const KetVector> family,
                     bool keep_partial_sums) {
  return omega_mixed(x, y, family, family, keep_partial_sums);
}

CheckReport verify_representation(const KetVector& x, const KetVector& y,
                                  std::span<const KetVector> family, const LinearMap& k_sqrt,
                                  double tolerance) {
  const KetPair pair{x, y};
  return verify_representation(std::span<const KetPair>(&pair, 1), family, k_sqrt, tolerance);
}

CheckReport verify_representation(std::span<const KetPair> samples, std::span<const KetVector> family,
                                  const LinearMap& k_sqrt, double tolerance) {
  double worst = 0.0;
  double worst_abs = 0.0;
  for (const auto& [x, y] : samples) {
    const Complex form = omega(x, y, family).value;
    const Complex rep = inner(k_sqrt * x, k_sqrt * y);
    const double dev = std::abs(form - rep);
    worst_abs = std::max(worst_abs, dev);
    worst = std::max(worst, dev / (1.0 + std::abs(form)));
  }
  CheckReport r = CheckReport::make("representation", worst, tolerance);
  r.details["max_abs_deviation"] = worst_abs;
  r.details["samples"] = static_cast<double>(samples.size());
  return r;
}

CheckReport quasi_basis_residual(const BiorthogonalSystem& sys, std::span<const KetPair> samples,
                                 double tolerance) {
  if (samples.empty()) throw Error("quasi-basis check needs at least one sample pair");
  double phi_psi = 0.0;
  double psi_phi = 0.0;
  for (const auto& [x, y] : samples) {
    const Complex target = inner(x, y);
    phi_psi = std::max(phi_psi, std::abs(omega_mixed(x, y, sys.phi, sys.psi).value - target));
    psi_phi = std::max(psi_phi, std::abs(omega_mixed(x, y, sys.psi, sys.phi).value - target));
  }
  CheckReport r = CheckReport::make("quasi_basis", std::max(phi_psi, psi_phi), tolerance);
  r.details["phi_psi_order"] = phi_psi;
  r.details["psi_phi_order"] = psi_phi;
  r.details["samples"] = static_cast<double>(samples.size());
  return r;
}

FrameBounds frame_bounds(const LinearMap& k) {
  const HermitianEigen eig = hermitian_eig(k);
  const double lmin = eig.eigenvalues.minCoeff();
  const double lmax = eig.eigenvalues.maxCoeff();
  if (lmin < -kPositiveTol * std::max(lmax, 0.0)) {
    std::ostringstream msg;
    msg << "frame bounds need a positive operator, lambda_min = " << lmin;
    throw NotPositive(msg.str(), lmin);
  }
  return {std::max(lmin, 0.0), lmax};
}

CheckReport frame_bounds_sandwich(std::span<const KetVector> family, const LinearMap& k,
                                  std::span<const KetVector> samples, double tolerance) {
  const FrameBounds b = frame_bounds(k);
  double worst = 0.0;
  for (const KetVector& x : samples) {
    const double nx2 = x.norm() * x.norm();
    const double value = omega(x, x, family).value.real();
    const double scale = std::max(b.upper * nx2, std::numeric_limits<double>::min());
    worst = std::max(worst, std::max(b.lower * nx2 - value, 0.0) / scale);
    worst = std::max(worst, std::max(value - b.upper * nx2, 0.0) / scale);
  }
  CheckReport r = CheckReport::make("frame_bounds", worst, tolerance);
  r.details["lower_bound"] = b.lower;
  r.details["upper_bound"] = b.upper;
  r.details["samples"] = static_cast<double>(samples.size());
  return r;
}

std::string_view to_string(TailClass c) {
  switch (c) {
    case TailClass::convergent: return "convergent";
    case TailClass::divergent: return "divergent";
    case TailClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Index> default_tail_grid() { return {16, 32, 64, 128, 256, 512}; }

TailDiagnostic tail_diagnostic(const KetGenerator& x, const FamilyGenerator& family,
                               std::span<const Index> grid, const WeightSequence& weights) {
  if (grid.empty()) throw Error("tail diagnostic needs a non-empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end() || grid.front() <= 0)
    throw Error("tail diagnostic grid must be strictly ascending and positive");

  // Coefficients <x, v_k> per truncation; the largest truncation supplies the
  // partial sums, the smaller ones only certify prefix consistency.
  std::vector<std::vector<Complex>> coeffs;
  coeffs.reserve(grid.size());
  for (const Index n : grid) {
    const std::vector<KetVector> fam = family(n);
    if (static_cast<Index>(fam.size()) < n) throw DimensionMismatch("family generator returned too few vectors");
    const Index dim = fam.front().dim();
    const KetVector xv = x(dim);
    std::vector<Complex> c(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = inner(xv, fam[static_cast<std::size_t>(k)]);
    coeffs.push_back(std::move(c));
  }
  const std::vector<Complex>& full = coeffs.back();
  for (std::size_t g = 0; g + 1 < coeffs.size(); ++g) {
    for (std::size_t k = 0; k < coeffs[g].size(); ++k) {
      const double diff = std::abs(coeffs[g][k] - full[k]);
      const double scale = std::max(std::abs(coeffs[g][k]), std::abs(full[k]));
      if (diff > kPrefixTolerance * scale && diff > std::numeric_limits<double>::min()) {
        std::ostringstream msg;
        msg << "coefficient " << k << " at truncation " << grid[g] << " differs from truncation "
            << grid.back() << " by " << diff;
        throw InconsistentPrefix(msg.str());
      }
    }
  }

  TailDiagnostic out;
  out.truncations.assign(grid.begin(), grid.end());
  double running = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < full.size() && next < grid.size(); ++k) {
    const double w = weights ? weights(static_cast<Index>(k)) : 1.0;
    running += w * std::norm(full[k]);
    if (static_cast<Index>(k + 1) == grid[next]) {
      out.partial_sums.push_back(running);
      ++next;
    }
  }

  // Slope of log S_N against log N over the upper half of the grid.
  std::vector<double> lx, ly;
  for (std::size_t g = grid.size() / 2; g < grid.size(); ++g) {
    if (out.partial_sums[g] > 0.0) {
      lx.push_back(std::log(static_cast<double>(grid[g])));
      ly.push_back(std::log(out.partial_sums[g]));
    }
  }
  out.growth_exponent = lx.size() >= 2 ? least_squares_slope(lx, ly) : 0.0;

  const double s_max = out.partial_sums.back();
  std::size_t half = 0;
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (2 * grid[g] <= grid.back()) half = g;
  const double tail = s_max > 0.0 ? (s_max - out.partial_sums[half]) / s_max : 0.0;
  if (tail < kConvergentTailRatio) {
    out.classification = TailClass::convergent;
  } else if (out.growth_exponent > kDivergentExponent) {
    out.classification = TailClass::divergent;
  } else {
    out.classification = TailClass::inconclusive;
  }
  return out;
}

}  // namespace rieszlab
