#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lvie {

/// Runs the command line front end. args excludes the program name.
/// Returns 0 on success and 1 on any user or runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lvie
