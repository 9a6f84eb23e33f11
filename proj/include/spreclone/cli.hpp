#pragma once

#include <iosfwd>

namespace spreclone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and writes its report to `out`.
/// Returns 0 on success, 1 when the checked property fails, 2 on usage or cap errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spreclone::cli
