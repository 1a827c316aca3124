#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netident::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kInputFailure = 2;

/// Runs the command-line tool. `args` excludes the program name.
/// Results go to `out`, diagnostics and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netident::cli
