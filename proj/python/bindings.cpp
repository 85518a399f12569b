#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rieszlab/config.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/forms.hpp"
#include "rieszlab/hermite_model.hpp"
#include "rieszlab/physical_operators.hpp"
#include "rieszlab/riesz_systems.hpp"
#include "rieszlab/sampling.hpp"
#include "rieszlab/suite.hpp"

namespace py = pybind11;
using namespace rieszlab;

namespace {

py::dict to_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["residual"] = r.residual;
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass;
  d["details"] = r.details;
  d["notes"] = r.notes;
  return d;
}

py::list to_list(const std::vector<CheckReport>& reports) {
  py::list out;
  for (const auto& r : reports) out.append(to_dict(r));
  return out;
}

ReportFormat parse_format(const std::string& f) {
  if (f == "json") return ReportFormat::json;
  if (f == "csv") return ReportFormat::csv;
  throw py::value_error("format must be 'json' or 'csv'");
}

std::vector<KetVector> ket_columns(const Matrix& m) { return column_vectors(m); }

}  // namespace

PYBIND11_MODULE(_rieszlab, m) {
  m.doc() = "Generalized Riesz systems in finite-dimensional truncations";

  static py::exception<Error> base(m, "RieszError", PyExc_RuntimeError);
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const Error& e) {
      py::set_error(base, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  });

  m.def("build_system", [](const Matrix& t) {
    const BiorthogonalSystem sys = build_system(ConstructingPair(LinearMap(t)));
    return py::make_tuple(sys.phi_matrix(), sys.psi_matrix());
  }, py::arg("T"), "Columns phi_n = T e_n and psi_n = (T^{-1})* e_n.");

  m.def("frame_operators", [](const Matrix& t) {
    const BiorthogonalSystem sys = build_system(ConstructingPair(LinearMap(t)));
    const FrameOperators ops = frame_operators(sys);
    py::dict d;
    d["K_phi"] = ops.K_phi.matrix();
    d["K_psi"] = ops.K_psi.matrix();
    d["K_phi_sqrt"] = ops.K_phi_sqrt.matrix();
    d["K_psi_sqrt"] = ops.K_psi_sqrt.matrix();
    return d;
  }, py::arg("T"));

  m.def("frame_operator", [](const Matrix& family) {
    const auto kets = ket_columns(family);
    return frame_operator(kets).matrix();
  }, py::arg("family"), "Sum of outer products of the columns.");

  m.def("polar_decompose", [](const Matrix& t) {
    const PolarFactors f = polar_decompose(LinearMap(t));
    return py::make_tuple(f.positive_part.matrix(), f.unitary_part.matrix());
  }, py::arg("T"), "Returns (P, U) with T = P U.");

  m.def("omega", [](const Vector& x, const Vector& y, const Matrix& family) {
    const auto kets = ket_columns(family);
    return omega(KetVector(x), KetVector(y), kets).value;
  }, py::arg("x"), py::arg("y"), py::arg("family"));

  m.def("check_system", [](const Matrix& t, std::uint64_t seed, std::size_t samples) {
    const BiorthogonalSystem sys = build_system(ConstructingPair(LinearMap(t)));
    const FrameOperators ops = frame_operators(sys);
    Sampler s(seed);
    const auto pairs = s.ket_pairs(sys.dim(), samples);
    const auto kets = s.kets(sys.dim(), samples);
    return to_list({check_biorthogonality(sys), verify_K_relations(sys, ops), reconstruct_onb(sys, ops).report,
                    verify_clause_i3(sys, ops, kets), quasi_basis_residual(sys, pairs),
                    verify_representation(pairs, sys.phi, ops.K_phi_sqrt)});
  }, py::arg("T"), py::arg("seed") = 0, py::arg("samples") = 100);

  m.def("ladder_operators", [](const std::string& kind, Index dim) {
    const AlphaSequence a = kind == "sqrt_n" ? AlphaSequence::sqrt_n(dim) : AlphaSequence::linear(dim);
    const LadderPair l = ladder_operators(a, dim);
    return py::make_tuple(l.lowering.matrix(), l.raising.matrix());
  }, py::arg("kind"), py::arg("dim"), "Lowering and raising matrices for alpha 'sqrt_n' or 'linear'.");

  m.def("ccr_check", [](Index dim) { return to_dict(ccr_check(AlphaSequence::sqrt_n(dim), dim)); },
        py::arg("dim"));

  auto h = m.def_submodule("hermite", "Multiplication by 1 + x^2 in the Hermite basis");
  h.def("hermite_function", &hermite::hermite_function, py::arg("n"), py::arg("x"));
  h.def("gauss_hermite", [](Index order) {
    const hermite::GaussHermiteRule r = hermite::gauss_hermite(order);
    return py::make_tuple(r.nodes, r.scaled_weights);
  }, py::arg("order"), "Nodes and weights times exp(x^2).");
  h.def("x_matrix", [](Index dim) { return hermite::build_X(dim).matrix(); }, py::arg("dim"));
  h.def("verify_K_psi", [](Index dim) { return to_dict(hermite::verify_K_psi(dim)); }, py::arg("dim"));
  h.def("frame_bound_growth", [](std::vector<Index> dims) {
    const hermite::FrameBoundGrowth g = hermite::frame_bound_growth(dims);
    return py::make_tuple(g.lower, g.upper);
  }, py::arg("dims"));
  h.def("tail_dichotomy", [] {
    const auto grid = default_tail_grid();
    return to_dict(hermite::tail_dichotomy_check(grid));
  });

  m.def("run", [](const std::string& config_json) { return to_list(run_suite(parse_config(config_json))); },
        py::arg("config_json"), "Run a JSON config; returns report dicts sorted by name.");
  m.def("report", [](const std::string& config_json, const std::string& format) {
    const RunConfig cfg = parse_config(config_json);
    return emit_report(cfg, run_suite(cfg), parse_format(format));
  }, py::arg("config_json"), py::arg("format") = "json");
}
