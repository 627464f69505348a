#include <iostream>

#include "theta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  theta::CliResult const r = theta::run_cli(args);
  std::cout << r.output;
  if (!r.error.empty()) {
    std::cerr << r.error << '\n';
  }
  return r.code;
}
