#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secnpu::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kInternal = 3 };

// Entry point shared by main() and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secnpu::cli
