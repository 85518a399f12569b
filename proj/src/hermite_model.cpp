#include "rieszlab/hermite_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rieszlab/sampling.hpp"

namespace rieszlab::hermite {

namespace {

constexpr double kRescale = 1e150;

// Runs the orthonormal Hermite polynomial recurrence
//   p_{n+1} = x sqrt(2/(n+1)) p_n - sqrt(n/(n+1)) p_{n-1},  p_0 = pi^{-1/4},
// keeping p in [~1, 1e150] and moving the excess into log_scale.
// visit(n, p_n, log_scale) sees p_n * exp(log_scale) = true p_n(x).
template <typename Visit>
void run_recurrence(Index count, double x, Visit&& visit) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  double log_scale = 0.0;
  for (Index n = 0; n < count; ++n) {
    visit(n, cur, log_scale);
    const double dn = static_cast<double>(n);
    const double next = x * std::sqrt(2.0 / (dn + 1.0)) * cur - std::sqrt(dn / (dn + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
}

double scaled_value(double p, double log_scale, double x) {
  if (p == 0.0) return 0.0;
  const double mag = std::exp(std::log(std::abs(p)) + log_scale - 0.5 * x * x);
  return p < 0.0 ? -mag : mag;
}

// p_{order}(x) / p_{order-1}(x), immune to the common scale factor.
double newton_ratio(Index order, double x) {
  double last = 0.0, before_last = 0.0;
  run_recurrence(order + 1, x, [&](Index n, double p, double) {
    if (n == order - 1) before_last = p;
    if (n == order) last = p;
  });
  // Rescaling between the two visits would divide only `last`; undo it.
  double check_prev = 0.0, check_cur = 0.0, s_prev = 0.0, s_cur = 0.0;
  run_recurrence(order + 1, x, [&](Index n, double p, double s) {
    if (n == order - 1) { check_prev = p; s_prev = s; }
    if (n == order) { check_cur = p; s_cur = s; }
  });
  (void)last;
  (void)before_last;
  return check_cur / check_prev * std::exp(s_cur - s_prev);
}

Eigen::MatrixXd function_table(Index count, const GaussHermiteRule& rule) {
  Eigen::MatrixXd table(count, rule.order());
  for (Index i = 0; i < rule.order(); ++i) {
    const std::vector<double> e = hermite_functions(count, rule.nodes[static_cast<std::size_t>(i)]);
    for (Index k = 0; k < count; ++k) table(k, i) = e[static_cast<std::size_t>(k)];
  }
  return table;
}

// Matrix of int e_m mult e_n over m, n < count.
Eigen::MatrixXd multiplier_matrix(Index count, Multiplier mult, const GaussHermiteRule& rule) {
  const Eigen::MatrixXd table = function_table(count, rule);
  Eigen::VectorXd w(rule.order());
  for (Index i = 0; i < rule.order(); ++i) {
    const auto j = static_cast<std::size_t>(i);
    w[i] = rule.scaled_weights[j] * multiplier_value(mult, rule.nodes[j]);
  }
  return table * w.asDiagonal() * table.transpose();
}

}  // namespace

double hermite_function(Index n, double x) {
  if (n < 0) throw IndexTooLarge("Hermite index must be non-negative");
  if (n > kMaxIndex) {
    std::ostringstream msg;
    msg << "Hermite index " << n << " exceeds " << kMaxIndex;
    throw IndexTooLarge(msg.str());
  }
  return hermite_functions(n + 1, x).back();
}

std::vector<double> hermite_functions(Index count, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max<Index>(count, 0)));
  run_recurrence(count, x, [&](Index n, double p, double s) {
    out[static_cast<std::size_t>(n)] = scaled_value(p, s, x);
  });
  return out;
}

double GaussHermiteRule::integrate(const std::function<double(double)>& g) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += scaled_weights[i] * g(nodes[i]);
  return sum;
}

GaussHermiteRule gauss_hermite(Index order) {
  if (order < 1) throw Error("Gauss-Hermite order must be positive");
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max<Index>(order - 1, 0));
  for (Index k = 1; k < order; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Gauss-Hermite eigensolve failed");
  Eigen::VectorXd x = solver.eigenvalues();

  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.scaled_weights.resize(static_cast<std::size_t>(order));
  const double root_two_order = std::sqrt(2.0 * static_cast<double>(order));
  for (Index i = 0; i < order; ++i) {
    double xi = x[i];
    // Newton polish on p_Q, using p_Q' = sqrt(2Q) p_{Q-1}.
    for (int it = 0; it < 2; ++it) xi -= newton_ratio(order, xi) / root_two_order;
    rule.nodes[static_cast<std::size_t>(i)] = xi;
  }
  // Exact symmetry of the rule.
  for (Index i = 0; i < order / 2; ++i) {
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    const double mag = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
    rule.nodes[lo] = -mag;
    rule.nodes[hi] = mag;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;

  // Christoffel-Darboux at a zero of p_Q: sum_{k<Q} p_k^2 = Q p_{Q-1}^2, so
  // w_i exp(x_i^2) = 1 / (Q e_{Q-1}(x_i)^2).
  for (Index i = 0; i < order; ++i) {
    const double xi = rule.nodes[static_cast<std::size_t>(i)];
    double log_abs = 0.0;
    run_recurrence(order, xi, [&](Index n, double p, double s) {
      if (n == order - 1) log_abs = std::log(std::abs(p)) + s - 0.5 * xi * xi;
    });
    rule.scaled_weights[static_cast<std::size_t>(i)] =
        std::exp(-std::log(static_cast<double>(order)) - 2.0 * log_abs);
  }
  return rule;
}

double multiplier_value(Multiplier m, double x) {
  const double q = 1.0 + x * x;
  switch (m) {
    case Multiplier::one: return 1.0;
    case Multiplier::one_plus_x2: return q;
    case Multiplier::inv_one_plus_x2: return 1.0 / q;
    case Multiplier::one_plus_x2_squared: return q * q;
    case Multiplier::inv_one_plus_x2_squared: return 1.0 / (q * q);
  }
  return 1.0;
}

Index default_order(Index m, Index n) { return std::max(4 * (std::max(m, n) + 1), m + n + 4); }

double quadrature_inner_product(Index m, Index n, Multiplier mult, Index order) {
  if (m < 0 || n < 0) throw IndexTooLarge("Hermite index must be non-negative");
  const Index q = order > 0 ? order : default_order(m, n);
  const GaussHermiteRule rule = gauss_hermite(q);
  const Index count = std::max(m, n) + 1;
  return rule.integrate([&](double x) {
    const std::vector<double> e = hermite_functions(count, x);
    return e[static_cast<std::size_t>(m)] * multiplier_value(mult, x) * e[static_cast<std::size_t>(n)];
  });
}

QuadratureEstimate quadrature_inner_product_checked(Index m, Index n, Multiplier mult, Index order) {
  const Index q = order > 0 ? order : default_order(m, n);
  QuadratureEstimate out;
  out.value = quadrature_inner_product(m, n, mult, q);
  out.refined = quadrature_inner_product(m, n, mult, 2 * q);
  out.deviation = std::abs(out.value - out.refined);
  return out;
}

LinearMap x_matrix_formula(Index dim) {
  if (dim < 1) throw DimensionMismatch("Hermite truncation needs dimension >= 1");
  Matrix x = Matrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) {
    const double dn = static_cast<double>(n);
    x(n, n) = dn + 1.5;
    if (n + 2 < dim) {
      const double off = std::sqrt((dn + 1.0) * (dn + 2.0)) / 2.0;
      x(n, n + 2) = off;
      x(n + 2, n) = off;
    }
  }
  return LinearMap(std::move(x));
}

HermiteModel build_model(Index dim) {
  HermiteModel model;
  model.dim = dim;
  model.X = x_matrix_formula(dim);
  const Index checked = std::min(dim, kMaxIndex + 1);
  model.oracle_max_index = checked - 1;
  model.rule = gauss_hermite(4 * checked);

  const Eigen::MatrixXd oracle = multiplier_matrix(checked, Multiplier::one_plus_x2, model.rule);
  const Matrix block = model.X.matrix().topLeftCorner(checked, checked);
  model.oracle_residual = (block.real() - oracle).cwiseAbs().maxCoeff();
  if (model.oracle_residual > kOracleTolerance) {
    std::ostringstream msg;
    msg << "truncated X deviates from quadrature by " << model.oracle_residual;
    throw OracleMismatch(msg.str(), model.oracle_residual);
  }
  model.X = model.X.certified();
  return model;
}

LinearMap build_X(Index dim) { return build_model(dim).X; }

BiorthogonalSystem build_example_system(Index dim, Index margin, double tolerance) {
  // X is self-adjoint, so psi_n = (X^{-1})* e_n = X^{-1} e_n.
  BiorthogonalSystem sys = build_system(ConstructingPair(build_X(dim)), tolerance);
  sys.interior_margin = margin < 0 ? dim / 2 : margin;
  return sys;
}

CheckReport verify_K_psi(Index dim, Index margin, double tolerance, std::uint64_t seed) {
  const HermiteModel model = build_model(dim);
  const BiorthogonalSystem sys = build_example_system(dim, margin);
  const FrameOperators ops = frame_operators(sys);
  const Index n = sys.interior_count();

  const Matrix& x = model.X.matrix();
  const Matrix x_inv = invert(model.X).matrix();
  auto block = [n](const Matrix& m) { return Matrix(m.topLeftCorner(n, n)); };

  const double k_phi = relative_fro(block(ops.K_phi.matrix()), block(x * x));
  const double k_psi = relative_fro(block(ops.K_psi.matrix()), block(x_inv * x_inv));

  // Omega_psi(f, g) = <X^{-1} f, X^{-1} g> on interior-supported vectors.
  Sampler sampler(seed);
  double form = 0.0;
  for (int s = 0; s < 20; ++s) {
    Vector f = Vector::Zero(dim);
    Vector g = Vector::Zero(dim);
    for (Index i = 0; i < n; ++i) {
      f[i] = sampler.complex_normal();
      g[i] = sampler.complex_normal();
    }
    const KetVector fk(f), gk(g);
    const Complex lhs = omega(fk, gk, sys.psi).value;
    const Complex rhs = inner(KetVector(Vector(x_inv * f)), KetVector(Vector(x_inv * g)));
    form = std::max(form, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }

  // (X^2)[m][k] only involves columns up to m + 2, so the interior block of
  // the truncated square equals the untruncated matrix of (1 + x^2)^2.
  const Index exact = std::min({n, dim - 2, kMaxIndex + 1});
  double k_phi_oracle = 0.0;
  double k_psi_oracle = 0.0;
  if (exact > 0) {
    const GaussHermiteRule rule = gauss_hermite(4 * dim);
    const Eigen::MatrixXd sq = multiplier_matrix(exact, Multiplier::one_plus_x2_squared, rule);
    k_phi_oracle = relative_fro(ops.K_phi.matrix().topLeftCorner(exact, exact),
                                Matrix(sq.cast<Complex>()));
    const Eigen::MatrixXd inv_sq = multiplier_matrix(exact, Multiplier::inv_one_plus_x2_squared, rule);
    k_psi_oracle = relative_fro(ops.K_psi.matrix().topLeftCorner(exact, exact),
                                Matrix(inv_sq.cast<Complex>()));
  }

  CheckReport r = CheckReport::make("k_psi", std::max({k_phi, k_psi, form, k_phi_oracle}), tolerance);
  r.details["K_phi_vs_X2"] = k_phi;
  r.details["K_psi_vs_Xinv2"] = k_psi;
  r.details["omega_psi_vs_Xinv_inner"] = form;
  r.details["K_phi_vs_quadrature"] = k_phi_oracle;
  // Truncating before inverting changes X^{-1}; shown, not gated.
  r.details["K_psi_vs_untruncated_quadrature"] = k_psi_oracle;
  r.details["interior_count"] = static_cast<double>(n);
  r.details["oracle_residual"] = model.oracle_residual;
  r.details["quadrature_order"] = static_cast<double>(model.rule.order());
  return r;
}

FrameBoundGrowth frame_bound_growth(std::span<const Index> dims) {
  FrameBoundGrowth out;
  for (const Index d : dims) {
    const BiorthogonalSystem sys = build_example_system(d);
    const FrameBounds b = frame_bounds(frame_operator(sys.phi));
    out.dims.push_back(d);
    out.lower.push_back(b.lower);
    out.upper.push_back(b.upper);
  }
  return out;
}

CheckReport frame_growth_check(std::span<const Index> dims) {
  if (dims.size() < 2) throw Error("frame growth check needs at least two dimensions");
  const FrameBoundGrowth g = frame_bound_growth(dims);
  int violations = 0;
  for (std::size_t i = 0; i < g.dims.size(); ++i) {
    if (g.lower[i] < 1.0 - 1e-12) ++violations;
    if (i > 0 && !(g.upper[i] > g.upper[i - 1])) ++violations;
  }
  const double ratio = g.upper.back() / g.upper[g.upper.size() - 2];
  if (!(ratio > 3.0)) ++violations;

  CheckReport r = CheckReport::make("frame_growth", static_cast<double>(violations), 0.0);
  for (std::size_t i = 0; i < g.dims.size(); ++i) {
    const std::string suffix = std::to_string(g.dims[i]);
    r.details["c_" + suffix] = g.lower[i];
    r.details["C_" + suffix] = g.upper[i];
  }
  r.details["last_ratio"] = ratio;
  return r;
}

FamilyGenerator phi_family() {
  return [](Index count) {
    const Matrix x = build_X(count + 2).matrix();
    std::vector<KetVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) out.emplace_back(Vector(x.col(k)));
    return out;
  };
}

KetGenerator coefficient_ket(std::function<double(Index)> c) {
  return [c = std::move(c)](Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = c(i);
    return KetVector(std::move(v));
  };
}

CheckReport tail_dichotomy_check(std::span<const Index> grid) {
  const FamilyGenerator family = phi_family();
  const TailDiagnostic harmonic = tail_diagnostic(
      coefficient_ket([](Index n) { return 1.0 / static_cast<double>(n + 1); }), family, grid);
  const TailDiagnostic geometric = tail_diagnostic(
      coefficient_ket([](Index n) { return std::ldexp(1.0, -static_cast<int>(n)); }), family, grid);

  int misclassified = 0;
  if (harmonic.classification != TailClass::divergent) ++misclassified;
  if (geometric.classification != TailClass::convergent) ++misclassified;

  CheckReport r = CheckReport::make("tail", static_cast<double>(misclassified), 0.0);
  r.details["harmonic_growth_exponent"] = harmonic.growth_exponent;
  r.details["harmonic_S_max"] = harmonic.partial_sums.back();
  r.details["geometric_growth_exponent"] = geometric.growth_exponent;
  r.details["geometric_S_max"] = geometric.partial_sums.back();
  r.notes["harmonic"] = std::string(to_string(harmonic.classification));
  r.notes["geometric"] = std::string(to_string(geometric.classification));
  return r;
}

}  // namespace rieszlab::hermite
