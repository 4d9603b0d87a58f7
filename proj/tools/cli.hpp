#pragma once

#include <ostream>

namespace galmech::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the command-line tool. Returns the process exit status:
/// 0 on success, 1 on a validation error, 2 on a numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace galmech::cli
