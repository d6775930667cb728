#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcs::cli {

// Process exit codes (sysexits-style for the error cases).
inline constexpr int kExitOk = 0;          // success, recurrence holds, b-file matches
inline constexpr int kExitWitness = 2;     // witness found, divergence, strategy disagreement
inline constexpr int kExitUsage = 64;      // bad arguments or unmet parameter precondition
inline constexpr int kExitMalformed = 65;  // malformed input file
inline constexpr int kExitNoInput = 66;    // input file missing or unreadable

/// Runs one command line (args excludes the program name). Results go to
/// out, diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcs::cli
