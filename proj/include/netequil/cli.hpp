#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netequil/error.hpp"

namespace netequil::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Exit codes: 0 ok, 1 usage or parse error, 2 solver
/// error, 3 precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code(ErrorCode code);

}  // namespace netequil::cli
