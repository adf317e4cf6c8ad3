#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace misere {

// Parses and runs one command line (program name excluded). Results go to
// out, diagnostics to err. Returns 0 on success, 1 when a verification the
// command ran is refuted, 2 on usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace misere
