#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jacobi::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRoundtrip = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the tool in-process. args excludes the program name. Documents go to
/// out (or --output), diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jacobi::cli
