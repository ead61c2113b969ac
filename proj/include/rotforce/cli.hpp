#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotforce::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one subcommand. args excludes the program name. Returns 0 on
/// success, 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotforce::cli
