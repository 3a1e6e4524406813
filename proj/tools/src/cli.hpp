#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relgraph::cli {

// Exit codes: 0 ok, 1 internal failure, 2 bad input, 3 resource cap hit.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relgraph::cli
