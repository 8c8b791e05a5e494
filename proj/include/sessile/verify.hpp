#pragma once

#include <string>
#include <vector>

#include "sessile/config.hpp"

namespace sessile {

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
  std::string note;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Surface resolution of the dynamic checks; the refinement check uses
  // n, 2n and 4n.
  int dynamics_n_surface = 16;
  double dynamics_dt = 1e-3;
};

// Runs the invariant suite with the physics of cfg.
std::vector<CheckResult> run_invariant_suite(const RunConfig& cfg, const VerifyOptions& opt = {});
std::string format_report(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace sessile
