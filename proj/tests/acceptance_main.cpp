#include <cstdio>

#include "dhg/acceptance.hpp"

int main() {
  auto results = dhg::run_acceptance();
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %-48s %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
