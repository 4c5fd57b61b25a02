#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;

// Parses `args` (without the program name), dispatches, and writes the result
// to `out`; diagnostics go to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entmax::cli
