#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magshift/emit.hpp"

namespace magshift {

// Full command-line surface; testable in-process. Returns the process exit
// code: 0 success, 1 usage/parse error, 2 quadrature convergence failure,
// 3 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// `key = value` per line, '#' comments; keys mirror RunConfig. Unknown keys
// are rejected. Flags override file values.
void apply_config_file(const std::string& path, RunConfig& config);

std::string version_string();

}  // namespace magshift
