#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace condorcet::cli {

// Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Colour is used only when `tty` is set and
// NO_COLOR is unset or empty.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool tty = false);

}  // namespace condorcet::cli
