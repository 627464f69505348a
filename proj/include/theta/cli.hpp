#pragma once

// The theta_calc command line as a library call, so that it can be tested
// in-process. Exit codes: 0 success, 1 property violation, 2 malformed input.

#include <string>
#include <vector>

namespace theta {

  struct CliResult {
    int         code = 0;
    std::string output;  // everything meant for stdout
    std::string error;   // everything meant for stderr
  };

  // args excludes the program name.
  CliResult run_cli(std::vector<std::string> const& args);

}  // namespace theta
