#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerofn::cli {

// Runs one CLI invocation. args excludes the program name. Returns the
// process exit status: 0 success, 1 verification failure, 2 usage error,
// 3 mathematical refusal.
int run_command(std::vector<std::string> args, std::ostream& out,
                std::ostream& err);

}  // namespace zerofn::cli
