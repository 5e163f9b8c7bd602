#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evo::cli {

// Process exit codes.
inline constexpr int kAffirmative = 0; // accepted / evolutionary / satisfiable
inline constexpr int kNegative = 1;    // rejected / not evolutionary / unsatisfiable
inline constexpr int kUsageError = 2;  // bad arguments, unreadable file, format violation

/// Entry point behind the `evo` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace evo::cli
