#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace furst::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verify-all found a failing criterion
inline constexpr int kExitError = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics and error objects to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace furst::cli
