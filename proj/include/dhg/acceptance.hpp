#pragma once

#include <string>
#include <vector>

namespace dhg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // short measurement summary, e.g. "max dev 3.1e-11"
};

// Runs the full verification battery. `filter` is a comma-separated list of
// criterion ids ("1,4,7"); empty means all. Results come back in id order.
// A positive `tol` replaces every built-in pass threshold.
std::vector<CriterionResult> run_acceptance(unsigned long seed = 1,
                                            const std::string& filter = "",
                                            double tol = 0);

}  // namespace dhg
