#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dam::service {

// Entry point of the dam command line. `args` excludes the program name.
// Errors are written to `err` as one JSON line {"error": {"code", "message"}};
// the return value is the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dam::service
