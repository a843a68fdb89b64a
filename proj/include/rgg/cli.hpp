#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgg::cli {

/// Entry point of the `rgg` tool: generate | moments | volumes | bound |
/// design | simulate. Returns the process exit status: 0 on success, 2 for
/// parameter errors, 3 for convergence errors, 4 for I/O errors, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgg::cli
