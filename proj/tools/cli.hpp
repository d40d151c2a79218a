#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twcert::cli {

enum ExitCode { kOk = 0, kVerificationFailure = 1, kInputError = 2 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twcert::cli
