#pragma once

#include <iosfwd>

namespace tabfix::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIoOrSchema = 2, kFindings = 3 };

/// Runs one subcommand. `in` stands in for stdin when no input path (or "-") is given.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tabfix::cli
