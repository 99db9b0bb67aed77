#include <iostream>
#include <string>
#include <vector>

#include "magshift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return magshift::run_cli(args, std::cout, std::cerr);
}
