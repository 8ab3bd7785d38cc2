#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphpass {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitSolverFailure = 1, kExitInputError = 2 };

/// Runs one subcommand (gen, eig, check, solve, perturb, certify, probe).
/// `args` excludes the program name. Errors are written to `err` as a
/// one-line JSON object {"error": ..., "message": ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphpass
