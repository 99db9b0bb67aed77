#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magshift/quadrature.hpp"

namespace magshift {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the full acceptance battery, printing one PASS/FAIL line per
// criterion. fast thins the sweep grids without dropping any criterion.
std::vector<CriterionResult> run_acceptance(bool fast,
                                            const QuadratureConfig& config,
                                            std::ostream& out);

// Location of the golden fixture table (compile-time default, overridable
// for relocated checkouts).
std::string golden_fixture_path();

struct GoldenRow {
  double n;
  bool perp;
  double S;
};
std::vector<GoldenRow> load_golden_fixture(const std::string& path);

}  // namespace magshift
