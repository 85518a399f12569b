#include "rieszlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "rieszlab/errors.hpp"
#include "rieszlab/forms.hpp"
#include "rieszlab/hermite_model.hpp"
#include "rieszlab/physical_operators.hpp"
#include "rieszlab/riesz_systems.hpp"
#include "rieszlab/sampling.hpp"

namespace rieszlab {

namespace {

// Each check draws from its own stream so adding or removing checks never
// changes the samples another check sees.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

CheckReport error_report(const std::string& name, std::string_view kind, std::string_view what) {
  CheckReport r = CheckReport::make(name, std::numeric_limits<double>::infinity(), 0.0);
  r.notes["error"] = std::string(kind) + ": " + std::string(what);
  return r;
}

// Lazily built objects shared by the checks of one run.
class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg), alpha_(make_alpha(cfg)) {}

  const RunConfig& cfg() const { return cfg_; }
  const AlphaSequence& alpha() const { return alpha_; }
  bool hermite() const { return cfg_.op.kind == OperatorKind::hermite_x; }

  const BiorthogonalSystem& system() {
    if (!system_) {
      if (hermite()) {
        system_ = hermite::build_example_system(cfg_.dimension, cfg_.interior_margin, cfg_.tolerance);
      } else {
        system_ = build_system(ConstructingPair(make_operator(cfg_)), cfg_.tolerance);
      }
    }
    return *system_;
  }
  const ConstructingPair& pair() { return *system().pair; }
  const FrameOperators& frames() {
    if (!frames_) frames_ = frame_operators(system());
    return *frames_;
  }
  const OperatorSet& operators() {
    if (!operators_) operators_ = build_operator_set(pair(), alpha_);
    return *operators_;
  }

  Sampler sampler(std::string_view name) const { return Sampler(stream_seed(cfg_.seed, name)); }
  std::size_t samples() const { return static_cast<std::size_t>(cfg_.samples); }

 private:
  const RunConfig& cfg_;
  AlphaSequence alpha_;
  std::optional<BiorthogonalSystem> system_;
  std::optional<FrameOperators> frames_;
  std::optional<OperatorSet> operators_;
};

using CheckFn = std::function<CheckReport(Context&)>;

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> checks = {
      {"adjoint_relation", [](Context& c) { return adjoint_relation_check(c.operators()); }},
      {"alpha", [](Context& c) { return validate_alpha(c.alpha()); }},
      {"biorthogonality", [](Context& c) { return check_biorthogonality(c.system()); }},
      {"ccr", [](Context& c) { return ccr_check(c.alpha(), c.cfg().dimension, &c.pair()); }},
      {"clause_i3",
       [](Context& c) {
         Sampler s = c.sampler("clause_i3");
         const auto kets = s.kets(c.cfg().dimension, c.samples());
         return verify_clause_i3(c.system(), c.frames(), kets);
       }},
      {"domain_mapping",
       [](Context& c) {
         const OperatorSet& set = c.operators();
         CheckReport worst;
         bool first = true;
         for (const LinearMap* op : {&set.H_e, &set.A_e, &set.B_e}) {
           for (const Side side : {Side::phi_psi, Side::psi_phi}) {
             CheckReport r = domain_mapping_check(c.pair().op(), *op, side);
             if (first || r.residual > worst.residual) worst = std::move(r);
             first = false;
           }
         }
         return worst;
       }},
      {"eigen",
       [](Context& c) {
         const double scale = std::max(1.0, c.pair().cond());
         CheckReport r = eigen_check(c.operators().H_phi_psi, c.system().phi, c.alpha(),
                                     c.cfg().tolerance * scale);
         r.details["cond"] = c.pair().cond();
         return r;
       }},
      {"frame_bounds",
       [](Context& c) {
         Sampler s = c.sampler("frame_bounds");
         const auto kets = s.kets(c.cfg().dimension, c.samples());
         return frame_bounds_sandwich(c.system().phi, c.frames().K_phi, kets);
       }},
      {"frame_growth",
       [](Context&) {
         const std::vector<Index> dims = {16, 32, 64};
         return hermite::frame_growth_check(dims);
       }},
      {"hamiltonian_agreement", [](Context& c) { return hamiltonian_agreement_check(c.system(), c.alpha()); }},
      {"hermite_oracle",
       [](Context& c) {
         const hermite::HermiteModel model = hermite::build_model(c.cfg().dimension);
         CheckReport r = CheckReport::make("hermite_oracle", model.oracle_residual, hermite::kOracleTolerance);
         r.details["oracle_max_index"] = static_cast<double>(model.oracle_max_index);
         r.details["quadrature_order"] = static_cast<double>(model.rule.order());
         r.details["dimension"] = static_cast<double>(model.dim);
         return r;
       }},
      {"k_psi",
       [](Context& c) {
         return hermite::verify_K_psi(c.cfg().dimension, c.cfg().interior_margin, 1e-6,
                                      stream_seed(c.cfg().seed, "k_psi"));
       }},
      {"k_relations",
       [](Context& c) { return verify_K_relations(c.system(), c.frames(), c.cfg().tolerance); }},
      {"ladder",
       [](Context& c) {
         return ladder_check(c.operators().A_phi_psi, c.operators().B_phi_psi, c.system().phi, c.alpha());
       }},
      {"onb_reconstruction", [](Context& c) { return reconstruct_onb(c.system(), c.frames()).report; }},
      {"polar", [](Context& c) { return verify_polar_normalization(c.pair()); }},
      {"product_identity",
       [](Context& c) {
         CheckReport worst;
         bool first = true;
         for (int m = 0; m <= 4; ++m) {
           for (int l = 0; m + l <= 4; ++l) {
             CheckReport r = product_identity_check(c.operators(), m, l);
             if (first || r.residual > worst.residual) worst = std::move(r);
             first = false;
           }
         }
         worst.details["max_total_power"] = 4;
         return worst;
       }},
      {"quasi_basis",
       [](Context& c) {
         Sampler s = c.sampler("quasi_basis");
         const auto pairs = s.ket_pairs(c.cfg().dimension, c.samples());
         return quasi_basis_residual(c.system(), pairs);
       }},
      {"representation",
       [](Context& c) {
         Sampler s = c.sampler("representation");
         const auto pairs = s.ket_pairs(c.cfg().dimension, c.samples());
         CheckReport phi = verify_representation(pairs, c.system().phi, c.frames().K_phi_sqrt);
         const CheckReport psi = verify_representation(pairs, c.system().psi, c.frames().K_psi_sqrt);
         phi.details["phi_family"] = phi.residual;
         phi.details["psi_family"] = psi.residual;
         phi.residual = std::max(phi.residual, psi.residual);
         phi.finalize();
         return phi;
       }},
      {"tail",
       [](Context&) {
         const std::vector<Index> grid = default_tail_grid();
         return hermite::tail_dichotomy_check(grid);
       }},
  };
  return checks;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<CheckReport> run_suite(const RunConfig& cfg) {
  const std::vector<std::string> names = cfg.checks.empty() ? default_checks(cfg) : cfg.checks;
  std::vector<CheckReport> reports;
  reports.reserve(names.size());

  std::optional<Context> ctx;
  try {
    ctx.emplace(cfg);
  } catch (const Error& e) {
    for (const std::string& name : names) reports.push_back(error_report(name, e.kind(), e.what()));
  }

  if (ctx) {
    for (const std::string& name : names) {
      const auto it = registry().find(name);
      CheckReport r;
      if (it == registry().end()) {
        r = error_report(name, "UnknownCheck", "no such check");
      } else {
        try {
          r = it->second(*ctx);
          r.name = name;
          r.finalize();
        } catch (const Error& e) {
          r = error_report(name, e.kind(), e.what());
        } catch (const std::exception& e) {
          r = error_report(name, "InternalError", e.what());
        }
      }
      reports.push_back(std::move(r));
    }
  }

  for (CheckReport& r : reports) r.provenance["seed"] = std::to_string(cfg.seed);
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return reports;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::string emit_report(const RunConfig& cfg, std::vector<CheckReport> reports, ReportFormat format) {
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });

  if (format == ReportFormat::csv) {
    std::ostringstream out;
    out << "name,residual,tolerance,pass\n";
    for (const CheckReport& r : reports)
      out << csv_field(r.name) << ',' << format_real(r.residual) << ',' << format_real(r.tolerance) << ','
          << (r.pass ? "true" : "false") << '\n';
    return out.str();
  }

  using oj = nlohmann::ordered_json;
  oj list = oj::array();
  for (const CheckReport& r : reports) {
    oj details = oj::object();
    for (const auto& [k, v] : r.details) details[k] = format_real(v);
    oj entry = {{"name", r.name},
                {"residual", format_real(r.residual)},
                {"tolerance", format_real(r.tolerance)},
                {"pass", r.pass},
                {"details", std::move(details)}};
    if (!r.notes.empty()) entry["notes"] = r.notes;
    if (!r.provenance.empty()) entry["provenance"] = r.provenance;
    list.push_back(std::move(entry));
  }
  const oj doc = {{"schema", std::string(kSchema)}, {"config", config_to_json(cfg)}, {"reports", std::move(list)}};
  return doc.dump(2) + "\n";
}

}  // namespace rieszlab
