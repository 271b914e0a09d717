#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blockpart {

// Full command-line front end, factored out of main() so tests can drive it.
// args excludes the program name. Returns the process exit code: 0 on
// success/equality, 1 on identity failure, 2 on usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockpart
