#pragma once

// Self-contained verification suites: each check recomputes one structural
// identity of the library (operator algebra, analytic oracles, heat-trace
// limits, the trace formula, gauge invariance) and reports the measured
// residual against its tolerance.  The CLI `verify` subcommand is a thin
// shell over run_verify_suite; tests exercise the same entry points.

#include <string>
#include <vector>

namespace ssqw {

/// One verified identity: the measured value must not exceed the tolerance.
struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// Names accepted by run_verify_suite: "algebra", "analytic", "heat",
/// "krein", "gauge", and "all" (every suite concatenated).
const std::vector<std::string>& verify_suite_names();

/// Runs one suite.  n controls the window sizes of the operator-level
/// checks (clamped per check to keep the cheap suites cheap); tol_scale
/// multiplies every tolerance, for exploring how much slack a check has.
/// Throws std::invalid_argument for an unknown suite name or a
/// non-positive tol_scale.
VerifyReport run_verify_suite(const std::string& suite, long n = 256,
                              double tol_scale = 1.0);

}  // namespace ssqw
