#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phaselab {

/// Command-line front end. args excludes the program name. Returns 0 on
/// success, 1 on usage errors, 2 on numerical or verification failures.
/// Subcommands: spectrum, aa, berry, holonomy, sweep, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace phaselab
