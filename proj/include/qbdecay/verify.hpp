#pragma once

#include <string>
#include <vector>

#include "qbdecay/decay.hpp"
#include "qbdecay/oracle.hpp"

namespace qbdecay {

struct VerifyOptions {
  int N = 200;                                // truncation for slope fits
  int N_duality = 40;                         // truncation for the transpose identity
  std::vector<int> refine_sizes = {60, 100, 150};  // compensation / monotone trend
  std::vector<int> probe_sizes = {40, 80, 120};
  double tol = 1e-12;
  double slope_rtol = 0.05;
  double phase_rtol = 0.01;
  int compensation_K = 60;
  // Test hooks: when positive, replace the computed optimal exponents
  // before the slope comparisons (negative control for the harness).
  double override_s1 = 0.0;
  double override_s2 = 0.0;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;     // measured quantity
  double expected = 0.0;  // analytic target when applicable
  double error = 0.0;     // comparison metric
  double bound = 0.0;     // acceptance threshold for the metric
  std::string detail;
};

struct VerifyReport {
  DecaySolution analysis;
  std::vector<VerifyCheck> checks;
  bool all_pass = false;
};

// Runs the full cross-check suite: series residuals, monotone refinement,
// transpose duality, slope fits against the analytic exponents (axes,
// diagonal, and the hitting side), phase and offset invariance of the
// slopes, the boundary compensation identity across sizes, and the
// convergence-domain probe at points straddling the predicted region.
VerifyReport run_verification(const BlockModel& m, const VerifyOptions& opt = {});

}  // namespace qbdecay
