#pragma once

// Runs the configured checks and serializes their reports.

#include <string>
#include <vector>

#include "rieszlab/config.hpp"
#include "rieszlab/report.hpp"

namespace rieszlab {

// One report per requested check (the default suite when none are listed),
// sorted by name. Never throws for library errors: a failing build or check
// becomes a report with residual = inf and notes["error"] set.
std::vector<CheckReport> run_suite(const RunConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reports);

enum class ReportFormat { json, csv };

// JSON: {"schema", "config", "reports"} with every real as a 17-significant-digit
// decimal string. CSV: name,residual,tolerance,pass. Output is byte-stable.
std::string emit_report(const RunConfig& cfg, std::vector<CheckReport> reports, ReportFormat format);

// "%.17g", with "inf", "-inf" and "nan" spelled out.
std::string format_real(double v);

}  // namespace rieszlab
