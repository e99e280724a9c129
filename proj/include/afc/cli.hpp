#pragma once

#include <string>
#include <vector>

namespace afc {

// Full command-line entry point (subcommands: fit, sample, grid, simstudy,
// check).  Takes the arguments after the program name; returns the process
// exit code.  Lives in the library so tests can drive it in-process.
int run_cli(const std::vector<std::string>& args);

} // namespace afc
