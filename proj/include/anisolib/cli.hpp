#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anisolib {

// Batch front end. Subcommands: build, certify, sweep, compare.
// Config files provide the run parameters; explicit flags override them.
// Returns 0 on success, 1 on a failed certification, 2 on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace anisolib
