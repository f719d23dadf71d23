#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmodel {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitNumeric = 3,
};

/// Runs the `gmodel` command line (`args` excludes the program name).
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmodel
