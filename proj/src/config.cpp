#include "rieszlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rieszlab/errors.hpp"

namespace rieszlab {

using nlohmann::json;

namespace {

std::string join(const std::string& base, std::string_view key) { return base + "/" + std::string(key); }
std::string join(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(join(path, it.key()), "unknown key");
  }
}

double finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "must be finite");
  return d;
}

// A number, or [re, im].
Complex complex_entry(const json& v, const std::string& path) {
  if (v.is_number()) return {finite_number(v, path), 0.0};
  if (v.is_array() && v.size() == 2)
    return {finite_number(v[0], join(path, 0)), finite_number(v[1], join(path, 1))};
  throw ParseError(path, "must be a number or [re, im]");
}

Index integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "must be an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(1) << 40) throw ParseError(path, "is too large");
    return static_cast<Index>(u);
  }
  return static_cast<Index>(v.get<std::int64_t>());
}

const json& array_at(const json& obj, std::string_view key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(join(path, key), "is required");
  if (!it->is_array()) throw ParseError(join(path, key), "must be an array");
  return *it;
}

OperatorSpec parse_operator(const json& v, Index dim, const std::string& path) {
  if (!v.is_object()) throw ParseError(path, "must be an object");
  const auto kind_it = v.find("kind");
  if (kind_it == v.end()) throw ParseError(join(path, "kind"), "is required");
  if (!kind_it->is_string()) throw ParseError(join(path, "kind"), "must be a string");
  const std::string kind = kind_it->get<std::string>();

  OperatorSpec spec;
  if (kind == "diagonal") {
    reject_unknown_keys(v, path, {"kind", "values"});
    spec.kind = OperatorKind::diagonal;
    const json& values = array_at(v, "values", path);
    if (static_cast<Index>(values.size()) != dim)
      throw ParseError(join(path, "values"), "must have exactly dimension entries");
    for (std::size_t i = 0; i < values.size(); ++i)
      spec.diagonal.push_back(finite_number(values[i], join(join(path, "values"), i)));
  } else if (kind == "dense") {
    reject_unknown_keys(v, path, {"kind", "values"});
    spec.kind = OperatorKind::dense;
    const json& values = array_at(v, "values", path);
    if (static_cast<Index>(values.size()) != dim * dim)
      throw ParseError(join(path, "values"), "must have dimension^2 entries");
    for (std::size_t i = 0; i < values.size(); ++i)
      spec.dense.push_back(complex_entry(values[i], join(join(path, "values"), i)));
  } else if (kind == "hermite-x" || kind == "hermite_x") {
    reject_unknown_keys(v, path, {"kind"});
    spec.kind = OperatorKind::hermite_x;
  } else if (kind == "upper_unipotent") {
    reject_unknown_keys(v, path, {"kind", "value"});
    spec.kind = OperatorKind::upper_unipotent;
    const auto it = v.find("value");
    if (it == v.end()) throw ParseError(join(path, "value"), "is required");
    spec.value = finite_number(*it, join(path, "value"));
  } else {
    throw ParseError(join(path, "kind"), "unknown operator kind");
  }
  return spec;
}

AlphaSpec parse_alpha(const json& v, Index dim, const std::string& path) {
  if (!v.is_object()) throw ParseError(path, "must be an object");
  reject_unknown_keys(v, path, {"kind", "values", "r"});
  AlphaSpec spec;
  if (const auto it = v.find("kind"); it != v.end()) {
    if (!it->is_string()) throw ParseError(join(path, "kind"), "must be a string");
    const std::string kind = it->get<std::string>();
    if (kind == "sqrt_n") spec.kind = AlphaKind::sqrt_n;
    else if (kind == "linear") spec.kind = AlphaKind::linear;
    else if (kind == "custom") spec.kind = AlphaKind::custom;
    else throw ParseError(join(path, "kind"), "unknown alpha kind");
  }
  if (const auto it = v.find("r"); it != v.end()) {
    if (it->is_null()) {
      spec.r = std::nullopt;
    } else {
      spec.r = finite_number(*it, join(path, "r"));
      if (*spec.r <= 0.0) throw ParseError(join(path, "r"), "must be positive");
    }
  } else if (spec.kind == AlphaKind::custom) {
    spec.r = std::nullopt;
  }
  if (spec.kind == AlphaKind::custom) {
    const json& values = array_at(v, "values", path);
    if (static_cast<Index>(values.size()) < dim)
      throw ParseError(join(path, "values"), "needs at least dimension entries");
    for (std::size_t i = 0; i < values.size(); ++i)
      spec.values.push_back(complex_entry(values[i], join(join(path, "values"), i)));
  } else if (v.contains("values")) {
    throw ParseError(join(path, "values"), "only allowed for custom alpha");
  }
  return spec;
}

}  // namespace

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::diagonal: return "diagonal";
    case OperatorKind::dense: return "dense";
    case OperatorKind::hermite_x: return "hermite-x";
    case OperatorKind::upper_unipotent: return "upper_unipotent";
  }
  return "diagonal";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "adjoint_relation", "alpha",          "biorthogonality", "ccr",
      "clause_i3",        "domain_mapping", "eigen",           "frame_bounds",
      "frame_growth",     "hamiltonian_agreement", "hermite_oracle", "k_psi",
      "k_relations",      "ladder",         "onb_reconstruction", "polar",
      "product_identity", "quasi_basis",    "representation",  "tail"};
  return names;
}

bool hermite_only(std::string_view check) {
  return check == "frame_growth" || check == "hermite_oracle" || check == "k_psi" || check == "tail";
}

std::vector<std::string> default_checks(const RunConfig& cfg) {
  std::vector<std::string> out;
  for (const std::string& name : known_checks()) {
    if (hermite_only(name) && cfg.op.kind != OperatorKind::hermite_x) continue;
    if (name == "ccr" && cfg.alpha.kind != AlphaKind::sqrt_n) continue;
    out.push_back(name);
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "top level must be an object");
  reject_unknown_keys(doc, "", {"schema", "dimension", "operator", "alpha", "tolerance",
                                "interior_margin", "seed", "samples", "checks"});

  if (const auto it = doc.find("schema"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kSchema)
      throw ParseError("/schema", "must be \"" + std::string(kSchema) + "\"");
  }

  RunConfig cfg;

  // Checks first: a bad name is reported even when other fields are missing.
  if (const auto it = doc.find("checks"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("/checks", "must be an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& c = (*it)[i];
      const std::string path = join("/checks", i);
      if (!c.is_string()) throw ParseError(path, "must be a string");
      const std::string name = c.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ParseError(path, "unknown check");
      if (!seen.insert(name).second) throw ParseError(path, "duplicate check");
      cfg.checks.push_back(name);
    }
  }

  const auto dim_it = doc.find("dimension");
  if (dim_it == doc.end()) throw ParseError("/dimension", "is required");
  cfg.dimension = integer(*dim_it, "/dimension");
  if (cfg.dimension < 2) throw ParseError("/dimension", "must be ≥ 2");
  if (cfg.dimension > 4096) throw ParseError("/dimension", "must be ≤ 4096");

  const auto op_it = doc.find("operator");
  if (op_it == doc.end()) throw ParseError("/operator", "is required");
  cfg.op = parse_operator(*op_it, cfg.dimension, "/operator");

  if (const auto it = doc.find("alpha"); it != doc.end())
    cfg.alpha = parse_alpha(*it, cfg.dimension, "/alpha");

  if (const auto it = doc.find("tolerance"); it != doc.end()) {
    cfg.tolerance = finite_number(*it, "/tolerance");
    if (cfg.tolerance <= 0.0) throw ParseError("/tolerance", "must be positive");
  }

  cfg.interior_margin = cfg.dimension / 2;
  if (const auto it = doc.find("interior_margin"); it != doc.end()) {
    cfg.interior_margin = integer(*it, "/interior_margin");
    if (cfg.interior_margin < 0) throw ParseError("/interior_margin", "must be non-negative");
    if (cfg.interior_margin >= cfg.dimension) throw ParseError("/interior_margin", "must be < dimension");
  }

  if (const auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_integer()) throw ParseError("/seed", "must be an integer");
    if (!it->is_number_unsigned()) throw ParseError("/seed", "must be non-negative");
    cfg.seed = it->get<std::uint64_t>();
  }

  if (const auto it = doc.find("samples"); it != doc.end()) {
    cfg.samples = integer(*it, "/samples");
    if (cfg.samples < 1) throw ParseError("/samples", "must be ≥ 1");
    if (cfg.samples > 100000) throw ParseError("/samples", "must be ≤ 100000");
  }

  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    if (hermite_only(cfg.checks[i]) && cfg.op.kind != OperatorKind::hermite_x)
      throw ParseError(join("/checks", i), "only available for the hermite-x operator");
  }
  return cfg;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  using oj = nlohmann::ordered_json;
  auto complex_json = [](Complex c) {
    return c.imag() == 0.0 ? oj(c.real()) : oj::array({c.real(), c.imag()});
  };
  oj op = {{"kind", std::string(to_string(cfg.op.kind))}};
  switch (cfg.op.kind) {
    case OperatorKind::diagonal: op["values"] = cfg.op.diagonal; break;
    case OperatorKind::dense: {
      oj values = oj::array();
      for (const Complex c : cfg.op.dense) values.push_back(complex_json(c));
      op["values"] = std::move(values);
      break;
    }
    case OperatorKind::hermite_x: break;
    case OperatorKind::upper_unipotent: op["value"] = cfg.op.value; break;
  }
  oj alpha = {{"kind", std::string(to_string(cfg.alpha.kind))}};
  if (cfg.alpha.kind == AlphaKind::custom) {
    oj values = oj::array();
    for (const Complex c : cfg.alpha.values) values.push_back(complex_json(c));
    alpha["values"] = std::move(values);
  }
  alpha["r"] = cfg.alpha.r ? oj(*cfg.alpha.r) : oj(nullptr);

  const std::vector<std::string> checks = cfg.checks.empty() ? default_checks(cfg) : cfg.checks;
  return oj{{"schema", std::string(kSchema)},
            {"dimension", cfg.dimension},
            {"operator", std::move(op)},
            {"alpha", std::move(alpha)},
            {"tolerance", cfg.tolerance},
            {"interior_margin", cfg.interior_margin},
            {"seed", cfg.seed},
            {"samples", cfg.samples},
            {"checks", checks}};
}

AlphaSequence make_alpha(const RunConfig& cfg) {
  switch (cfg.alpha.kind) {
    case AlphaKind::sqrt_n: return AlphaSequence::sqrt_n(cfg.dimension, cfg.alpha.r);
    case AlphaKind::linear: return AlphaSequence::linear(cfg.dimension, cfg.alpha.r);
    case AlphaKind::custom: return AlphaSequence::custom(cfg.alpha.values, cfg.alpha.r);
  }
  return AlphaSequence::sqrt_n(cfg.dimension, cfg.alpha.r);
}

LinearMap make_operator(const RunConfig& cfg) {
  const Index n = cfg.dimension;
  Matrix m = Matrix::Zero(n, n);
  switch (cfg.op.kind) {
    case OperatorKind::diagonal:
      for (Index i = 0; i < n; ++i) m(i, i) = cfg.op.diagonal[static_cast<std::size_t>(i)];
      break;
    case OperatorKind::dense:
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = cfg.op.dense[static_cast<std::size_t>(i * n + j)];
      break;
    case OperatorKind::hermite_x:
      throw Error("the hermite-x operator is built by the Hermite model");
    case OperatorKind::upper_unipotent:
      m.setIdentity();
      for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = cfg.op.value;
      break;
  }
  return LinearMap(std::move(m));
}

}  // namespace rieszlab
