#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bose::cli {

// Full command-line front end; returns the process exit code
// (0 success, 1 domain/input error, 2 numerical error).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bose::cli
