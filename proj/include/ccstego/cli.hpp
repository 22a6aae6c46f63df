#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccstego::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,   // validation or parse failure
  kCapacity = 3,  // capacity or extraction failure
};

/// Entry point behind the `ccstego` binary. `args` excludes the program
/// name. Machine-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccstego::cli
