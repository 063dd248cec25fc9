#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace infmax::cli {

// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,    // unexpected internal error
  kInvalid = 2,    // bad input, usage or domain error
  kCapacity = 3,   // exact enumeration would exceed the cap
  kNoConvergence = 4,
};

inline constexpr std::string_view kCompareHeader =
    "instance_id,n,k,epsilon,r,solver_value,oracle_value,gap,wall_time";

// Runs one command line (without the program name). Reports and CSV go to `out` unless
// --out is given; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

} // namespace infmax::cli
