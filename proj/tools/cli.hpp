#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kerrjc::cli {

/// Entry point of the `kerrjc` tool. args[0] is the program name.
/// Returns 0 on success, 1 when `verify` finds a mismatch, 2 on usage or
/// runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `key = value` lines ('#' starts a comment) into "--key=value"
/// arguments. Throws std::runtime_error on malformed lines.
std::vector<std::string> config_arguments(const std::string& path);

}  // namespace kerrjc::cli
