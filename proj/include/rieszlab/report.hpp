#pragma once

#include <map>
#include <string>

namespace rieszlab {

// Outcome of one verification: a residual against a tolerance plus named
// sub-residuals. pass is always residual <= tolerance; use make() or
// finalize() so the two never drift apart.
struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> details;
  std::map<std::string, std::string> notes;
  std::map<std::string, std::string> provenance;

  static CheckReport make(std::string name, double residual, double tolerance) {
    CheckReport r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tolerance;
    r.finalize();
    return r;
  }

  // Recompute pass after residual or tolerance changed. NaN never passes.
  void finalize() { pass = residual <= tolerance; }
};

}  // namespace rieszlab
