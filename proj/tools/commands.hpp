#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msym::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs one invocation; args[0] is the program name. Normal output goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msym::cli
