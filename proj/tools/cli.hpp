#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace placto::cli {

// Runs the placto command line on args (without the program name). Returns
// the exit status: 0 clean or true, 1 violation or false, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace placto::cli
