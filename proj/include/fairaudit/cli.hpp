#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairaudit::cli {

// Runs the command line (without the program name). Report goes to `out`,
// diagnostics to `err`. Exit codes: 0 success, 2 validation error, 3
// inference error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairaudit::cli
