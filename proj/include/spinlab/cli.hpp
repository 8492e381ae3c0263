#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinlab {

enum ExitCode { ExitOk = 0, ExitAssertion = 1, ExitConfig = 2 };

// Runs one subcommand of the experiment runner. CSV goes to `out` unless
// --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinlab
