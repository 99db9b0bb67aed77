// Acceptance battery runner. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails. The same battery backs the CLI's
// `verify` subcommand.

#include <cstring>
#include <iostream>

#include "magshift/quadrature.hpp"
#include "magshift/verify.hpp"

int main(int argc, char** argv) {
  bool fast = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;

  magshift::QuadratureConfig config;
  const auto results = magshift::run_acceptance(fast, config, std::cout);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
