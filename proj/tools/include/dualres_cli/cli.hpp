#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualres::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitScale = 4;

/// Runs the `dualres` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3", "2..4" or "2,3,5" into the listed integers.
std::vector<int> parse_range(const std::string& text);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace dualres::cli
