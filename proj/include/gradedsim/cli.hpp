#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gradedsim {

// Runs one command-line invocation; `args` excludes the program name.
// Output goes to `out`, diagnostics to `err`. Exit codes: 0 = check holds
// or computation done, 1 = check fails (witness printed), 2 = usage or
// input error, 3 = fixpoint iteration cap hit (partial result printed).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gradedsim
