#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace so3cover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPipeline = 3;

/// Runs the command line (args excludes the program name). Reports go to
/// out, diagnostics and progress lines to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace so3cover::cli
