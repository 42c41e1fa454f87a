#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prefsom::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,          // success, or the queried inclusion holds
  kValidation = 1,  // bad arguments, data or query syntax
  kIo = 2,          // unreadable/unwritable files, malformed snapshots
  kSemantic = 3,    // specificity cycle, failed verification
  kNotHolds = 4,    // the queried inclusion does not hold
};

/// Runs `prefsom <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefsom::cli
