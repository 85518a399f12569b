// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Optional argv[1]: path to the rieszlab CLI, used for the determinism criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "rieszlab/config.hpp"
#include "rieszlab/forms.hpp"
#include "rieszlab/hermite_model.hpp"
#include "rieszlab/physical_operators.hpp"
#include "rieszlab/riesz_systems.hpp"
#include "rieszlab/sampling.hpp"
#include "rieszlab/suite.hpp"

using namespace rieszlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;

  void require(bool ok, const std::string& what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g", summary.empty() ? "" : " ", what.c_str(), value);
    summary += buf;
    if (!ok) {
      pass = false;
      summary += "(!)";
    }
  }
};

std::vector<double> one_to(Index n) {
  std::vector<double> d;
  for (Index i = 1; i <= n; ++i) d.push_back(static_cast<double>(i));
  return d;
}

BiorthogonalSystem random_system(Index n, double cond, std::uint64_t seed) {
  Sampler s(seed);
  return build_system(ConstructingPair(s.random_with_cond(n, cond)));
}

struct NamedSystem {
  std::string name;
  BiorthogonalSystem sys;
};

std::vector<NamedSystem> constructed_systems() {
  const auto d = one_to(32);
  return {{"diag32", build_system(ConstructingPair(LinearMap::diagonal(std::span<const double>(d))))},
          {"rand16", random_system(16, 100.0, 101)},
          {"rand64", random_system(64, 100.0, 102)},
          {"hermite64", hermite::build_example_system(64)}};
}

Outcome biorthogonality() {
  Outcome o;
  const auto d = one_to(32);
  const BiorthogonalSystem diag = build_system(ConstructingPair(LinearMap::diagonal(std::span<const double>(d))));
  o.require(check_biorthogonality(diag).residual < 1e-12, "diag32", check_biorthogonality(diag).residual);
  const BiorthogonalSystem herm = hermite::build_example_system(64);
  const double r = biorthogonality_defect(herm.phi, herm.psi, 33).residual;
  o.require(r < 1e-8, "hermite64_interior", r);
  return o;
}

Outcome representation() {
  Outcome o;
  Sampler s(202);
  const BiorthogonalSystem sys = build_system(ConstructingPair(s.random_with_cond(16, 100.0)));
  const FrameOperators ops = frame_operators(sys);
  const auto pairs = s.ket_pairs(16, 100);
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const Complex form = omega(x, y, sys.phi).value;
    const Complex rep = inner(ops.K_phi_sqrt * x, ops.K_phi_sqrt * y);
    worst = std::max(worst, std::abs(form - rep) / (1e-9 * (1.0 + std::abs(form))));
  }
  o.require(worst < 1.0, "max_ratio_to_bound", worst);
  return o;
}

Outcome k_relations() {
  Outcome o;
  for (const auto& [name, sys] : constructed_systems()) {
    const CheckReport r = verify_K_relations(sys, frame_operators(sys), 1e-8);
    o.require(r.pass, name, r.residual);
  }
  return o;
}

Outcome reconstruction() {
  Outcome o;
  std::uint64_t seed = 300;
  for (const auto& [name, sys] : constructed_systems()) {
    const FrameOperators ops = frame_operators(sys);
    const OnbReconstruction onb = reconstruct_onb(sys, ops, 1e-9);
    o.require(onb.report.details.at("cross") < 1e-9, name + "_cross", onb.report.details.at("cross"));
    const double gram = std::max(onb.report.details.at("gram_from_psi"), onb.report.details.at("gram_from_phi"));
    o.require(gram < 1e-9, name + "_gram", gram);
    Sampler s(++seed);
    const auto kets = s.kets(sys.dim(), 100);
    const CheckReport i3 = verify_clause_i3(sys, ops, kets, 1e-9);
    o.require(i3.residual < 1e-9, name + "_i3", i3.residual);
  }
  return o;
}

Outcome quasi_basis() {
  Outcome o;
  std::uint64_t seed = 400;
  for (const auto& [name, sys] : constructed_systems()) {
    Sampler s(++seed);
    const auto pairs = s.ket_pairs(sys.dim(), 100);
    const CheckReport r = quasi_basis_residual(sys, pairs, 1e-9);
    o.require(r.details.at("phi_psi_order") < 1e-9 && r.details.at("psi_phi_order") < 1e-9, name, r.residual);
  }
  return o;
}

Outcome hamiltonian() {
  Outcome o;
  Sampler s(500);
  const ConstructingPair pair(s.random_with_cond(16, 100.0));
  const BiorthogonalSystem sys = build_system(pair);
  for (const AlphaSequence& alpha : {AlphaSequence::sqrt_n(16), AlphaSequence::linear(16)}) {
    const std::string tag(to_string(alpha.kind));
    const CheckReport agree = hamiltonian_agreement_check(sys, alpha, 1e-9);
    o.require(agree.residual < 1e-9, tag + "_agreement", agree.residual);
    const OperatorSet set = build_operator_set(pair, alpha);
    const CheckReport eig = eigen_check(set.H_phi_psi, sys.phi, alpha, 1e-8 * pair.cond());
    o.require(eig.residual < 1e-8 * pair.cond(), tag + "_eigen", eig.residual);
  }
  return o;
}

Outcome ladder() {
  Outcome o;
  // Diagonal T: the lowering action on phi_0 is exactly zero.
  const auto d = one_to(16);
  const ConstructingPair diag(LinearMap::diagonal(std::span<const double>(d)));
  const OperatorSet dset = build_operator_set(diag, AlphaSequence::sqrt_n(16));
  const BiorthogonalSystem dsys = build_system(diag);
  const double ground = (dset.A_phi_psi * dsys.phi[0]).norm();
  o.require(ground == 0.0, "diag_A_phi0", ground);

  Sampler s(600);
  const ConstructingPair pair(s.random_with_cond(16, 100.0));
  const BiorthogonalSystem sys = build_system(pair);
  for (const AlphaSequence& alpha : {AlphaSequence::sqrt_n(16), AlphaSequence::linear(16)}) {
    const OperatorSet set = build_operator_set(pair, alpha);
    const CheckReport r = ladder_check(set.A_phi_psi, set.B_phi_psi, sys.phi, alpha, 1e-9);
    const std::string tag(to_string(alpha.kind));
    o.require(r.details.at("lowering_ground") < 1e-9, tag + "_A_phi0", r.details.at("lowering_ground"));
    o.require(r.details.at("lowering") < 1e-9, tag + "_lowering", r.details.at("lowering"));
    o.require(r.details.at("raising") < 1e-9, tag + "_raising", r.details.at("raising"));
  }
  return o;
}

Outcome ccr() {
  Outcome o;
  for (const Index n : {2, 3, 64}) {
    const CheckReport r = ccr_check(AlphaSequence::sqrt_n(n), n);
    const double worst = std::max(r.details.at("interior"), r.details.at("edge_defect"));
    o.require(worst <= 1e-12, "N" + std::to_string(n), worst);
  }
  Sampler s(700);
  const ConstructingPair pair(s.random_with_cond(64, 100.0));
  const CheckReport t = ccr_check(AlphaSequence::sqrt_n(64), 64, &pair);
  const double bound = 1e-10 * pair.cond() * pair.cond();
  o.require(t.details.at("transformed_interior") <= bound, "transformed64", t.details.at("transformed_interior"));
  return o;
}

Outcome products() {
  Outcome o;
  Sampler s(800);
  const ConstructingPair positive(s.random_positive(16, 100.0));
  const ConstructingPair general(s.random_with_cond(16, 100.0));
  for (const auto* pair : {&positive, &general}) {
    const OperatorSet set = build_operator_set(*pair, AlphaSequence::sqrt_n(16));
    double worst = 0.0, mixed = 0.0;
    for (int m = 0; m <= 4; ++m)
      for (int l = 0; m + l <= 4; ++l) {
        const CheckReport r = product_identity_check(set, m, l, 1e-10);
        worst = std::max(worst, r.residual);
        mixed = std::max(mixed, r.details.at("mixed_A_psi_phi_B_phi_psi"));
      }
    const std::string tag = pair == &positive ? "positive" : "general";
    o.require(worst < 1e-10, tag, worst);
    o.require(mixed < 1e-10, tag + "_mixed", mixed);
  }
  return o;
}

Outcome polar() {
  Outcome o;
  Sampler s(900);
  double reassembly = 0.0, gram = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double cond = 1.0 + 99.0 * s.uniform();
    const CheckReport r = verify_polar_normalization(ConstructingPair(s.random_with_cond(16, cond)));
    reassembly = std::max(reassembly, r.details.at("reassembly"));
    gram = std::max(gram, r.details.at("f_gram"));
  }
  o.require(reassembly < 1e-9, "reassembly", reassembly);
  o.require(gram < 1e-10, "f_gram", gram);
  return o;
}

Outcome hermite_gate() {
  Outcome o;
  const hermite::HermiteModel model = hermite::build_model(32);
  o.require(model.oracle_residual < 1e-9 && model.oracle_max_index == 31, "oracle32", model.oracle_residual);
  const CheckReport k = hermite::verify_K_psi(64, 32, 1e-6);
  o.require(k.details.at("K_psi_vs_Xinv2") < 1e-6, "K_psi64", k.details.at("K_psi_vs_Xinv2"));
  return o;
}

Outcome frame_growth() {
  Outcome o;
  const std::vector<Index> dims = {16, 32, 64};
  const hermite::FrameBoundGrowth g = hermite::frame_bound_growth(dims);
  const double c_min = *std::min_element(g.lower.begin(), g.lower.end());
  o.require(c_min >= 1.0, "c_min", c_min);
  o.require(g.upper[0] < g.upper[1] && g.upper[1] < g.upper[2], "C64", g.upper[2]);
  o.require(g.upper[2] / g.upper[1] > 3.0, "C64/C32", g.upper[2] / g.upper[1]);
  return o;
}

Outcome tail() {
  Outcome o;
  const auto grid = default_tail_grid();
  o.require(grid.back() == 512, "grid_max", static_cast<double>(grid.back()));
  const CheckReport r = hermite::tail_dichotomy_check(grid);
  o.require(r.notes.at("harmonic") == "divergent", "harmonic_exponent", r.details.at("harmonic_growth_exponent"));
  o.require(r.notes.at("geometric") == "convergent", "geometric_S", r.details.at("geometric_S_max"));
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism(const char* cli) {
  Outcome o;
  const std::string cfg_text =
      R"({"schema":"rieszlab/1","dimension":16,"operator":{"kind":"dense","values":[)" + [] {
        Sampler s(1000);
        const Matrix t = s.random_with_cond(16, 50.0).matrix();
        std::ostringstream v;
        v.precision(17);
        for (Index i = 0; i < 16; ++i)
          for (Index j = 0; j < 16; ++j)
            v << (i + j ? "," : "") << "[" << t(i, j).real() << "," << t(i, j).imag() << "]";
        return v.str();
      }() + R"(]},"seed":1234})";

  if (cli == nullptr) {
    const RunConfig cfg = parse_config(cfg_text);
    const std::string a = emit_report(cfg, run_suite(cfg), ReportFormat::json);
    const std::string b = emit_report(cfg, run_suite(cfg), ReportFormat::json);
    o.require(a == b, "identical_bytes", a == b ? 1.0 : 0.0);
    o.require(all_pass(run_suite(cfg)), "default_suite_pass", 1.0);
    return o;
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("rieszlab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "config.json";
  std::ofstream(cfg_path, std::ios::binary) << cfg_text;

  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + std::string(cli) + "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int e1 = run("run --config \"" + cfg_path.string() + "\" --out \"" + (dir / "a.json").string() + "\"");
  const int e2 = run("run --config \"" + cfg_path.string() + "\" --out \"" + (dir / "b.json").string() + "\"");
  const int e3 = run("run --config \"" + cfg_path.string() + "\" --format csv --out \"" + (dir / "a.csv").string() + "\"");
  const int e4 = run("run --config \"" + cfg_path.string() + "\" --format csv --out \"" + (dir / "b.csv").string() + "\"");
  const bool same_json = slurp(dir / "a.json") == slurp(dir / "b.json") && !slurp(dir / "a.json").empty();
  const bool same_csv = slurp(dir / "a.csv") == slurp(dir / "b.csv") && !slurp(dir / "a.csv").empty();
  o.require(same_json && same_csv, "identical_bytes", same_json && same_csv ? 1.0 : 0.0);
  o.require(e1 == 0 && e2 == 0 && e3 == 0 && e4 == 0, "dense16_exit", e1);
  const int eh = run("example hermite --dim 64 --full-suite --out \"" + (dir / "h.json").string() + "\"");
  o.require(eh == 0, "hermite64_full_suite_exit", eh);
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"biorthogonality", biorthogonality},
      {"representation identity", representation},
      {"K relations", k_relations},
      {"ONB reconstruction and square-root inverse", reconstruction},
      {"quasi-basis resolution", quasi_basis},
      {"Hamiltonian agreement and eigenvectors", hamiltonian},
      {"ladder actions", ladder},
      {"CCR with edge defect", ccr},
      {"product identities", products},
      {"polar normalization", polar},
      {"Hermite oracle gate and K_psi", hermite_gate},
      {"frame-bound growth", frame_growth},
      {"tail dichotomy", tail},
      {"CLI determinism", [cli] { return cli_determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.summary.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
