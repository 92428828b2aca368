#pragma once

#include "minkhelix/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace minkhelix {

/// Process exit codes. Verdicts of `analyze` use 0, 3 and 4; errors use 10 and up.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int helix = 0;
inline constexpr int verify_failed = 1;
inline constexpr int not_helix = 3;
inline constexpr int invariant_constant_non_helix = 4;
inline constexpr int input_error = 10;
inline constexpr int geometry_error = 11;
inline constexpr int numerical_error = 12;
inline constexpr int usage_error = 13;
inline constexpr int internal_error = 14;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace minkhelix
