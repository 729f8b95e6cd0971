#pragma once

#include <ostream>

namespace factorlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad arguments or unreadable files
  kExitValidation = 2,  // malformed algebra, context or formula
  kExitResource = 3,    // a size bound or closure budget was exceeded
  kExitNoWitness = 4,   // positivize found no satisfiable disjunct
  kExitDfcFail = 5,     // a DFC, correspondence or pipeline check failed
};

/// Runs the tool with argv[0] as program name, writing to `out` and `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace factorlab
