#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfa {

/// Entry point shared by the binary and the tests.  Returns the process exit
/// code: 0 on success, 1 when a check or domain condition fails, 2 on usage or
/// configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfa
