#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costas::cli {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 verification negative, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costas::cli
