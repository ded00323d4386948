#include <iostream>
#include <string>
#include <vector>

#include "kmpscp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kmpscp::run_cli(args, std::cout, std::cerr);
}
