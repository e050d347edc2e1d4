#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sutte::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNetwork = 3,
};

/// Entry point for `sutte <command> [options]`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sutte::app
