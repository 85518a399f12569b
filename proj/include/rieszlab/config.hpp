#pragma once

// Run configuration for the command-line tool: a JSON document naming an
// operator, an eigenvalue sequence and the checks to run on the system it
// generates.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rieszlab/operator_core.hpp"
#include "rieszlab/physical_operators.hpp"

namespace rieszlab {

inline constexpr std::string_view kSchema = "rieszlab/1";

enum class OperatorKind { diagonal, dense, hermite_x, upper_unipotent };
std::string_view to_string(OperatorKind k);

struct OperatorSpec {
  OperatorKind kind = OperatorKind::diagonal;
  std::vector<double> diagonal;  // diagonal
  std::vector<Complex> dense;    // dense, row-major
  double value = 0.0;            // upper_unipotent: I + value on the superdiagonal
};

struct AlphaSpec {
  AlphaKind kind = AlphaKind::sqrt_n;
  std::vector<Complex> values;  // custom only
  std::optional<double> r = 1.0;
};

struct RunConfig {
  Index dimension = 0;
  OperatorSpec op;
  AlphaSpec alpha;
  double tolerance = 1e-8;
  Index interior_margin = 0;
  std::uint64_t seed = 0;
  Index samples = 100;
  std::vector<std::string> checks;  // empty: default suite
};

// Every check name the suite knows, sorted.
const std::vector<std::string>& known_checks();
// Checks that only make sense for the Hermite operator.
bool hermite_only(std::string_view check);
// All applicable checks for cfg, sorted. ccr needs alpha = sqrt(n).
std::vector<std::string> default_checks(const RunConfig& cfg);

// Throws ParseError(path, reason) with a JSON pointer to the first offending
// value. Omitted interior_margin defaults to dimension / 2.
RunConfig parse_config(std::string_view text);

// Normalized echo with every default filled in; parse_config(dump) round-trips.
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

AlphaSequence make_alpha(const RunConfig& cfg);
// Throws NumericallySingular for singular operators.
LinearMap make_operator(const RunConfig& cfg);

}  // namespace rieszlab
