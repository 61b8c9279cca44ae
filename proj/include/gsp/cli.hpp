#pragma once

namespace gsp::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kInputError = 2 };

/// Runs the tool with the given arguments (argv[0] is the program name).
int run(int argc, const char *const *argv);

} // namespace gsp::cli
