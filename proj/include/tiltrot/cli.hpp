#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiltrot::cli {

// Batch command line front end. `args` excludes the program name.
// Exit codes: 0 success, 1 usage error, 2 math-domain error (singularities,
// no-solution, invalid rotations), 3 fuzz self-check failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tiltrot::cli
