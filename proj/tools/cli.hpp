#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

/// Exit codes: 0 success, 2 usage, 3 data, 4 numeric. Verdicts never change
/// the exit code.
enum ExitCode : int { ok = 0, usage = 2, data = 3, numeric = 4 };

/// Runs one command line. `args` excludes the program name. Data written to
/// stdout goes to `out`; echoes and diagnostics go to `err` (or `out` when
/// the data went to a file).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
