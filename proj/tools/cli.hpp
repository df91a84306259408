#pragma once

#include <ostream>

namespace grkit::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitInternal = 70;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grkit::cli
