#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ckm::cli {

/// Runs one `ckm` command line (without the program name). Returns 0 when every
/// check passes, 1 on verification failures and 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckm::cli
