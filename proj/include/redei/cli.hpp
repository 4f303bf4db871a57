#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace redei::cli {

/// Runs one command line (program name excluded) and returns the exit code:
/// 0 verified, 1 violation found, 2 usage or input error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redei::cli
