#pragma once

// Command-line front end. Kept in a library so tests can drive it in-process.

#include <iosfwd>

namespace qit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

/// Runs one command; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qit::cli
