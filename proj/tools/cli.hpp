#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace citeangle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

/// Runs the citeangle command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace citeangle::cli
