#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sidon {

/// Exit codes: 0 verified as expected, 1 input error, 2 a verification failed.
enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_verification_failed = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

} // namespace sidon
