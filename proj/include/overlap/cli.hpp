#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace overlap {

enum ExitCode : int {
    kExitOk = 0,
    kExitPropertyFailure = 1,
    kExitBadInput = 2,
    kExitRefinementExhausted = 3,
};

/// Runs one `overlap` command. `args` excludes the program name. Reports go
/// to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace overlap
