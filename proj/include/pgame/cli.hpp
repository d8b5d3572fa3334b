#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pgame/verify.hpp"

namespace pgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Runs the `pgame` command line. `args` excludes the program name.
// Output goes to `out`, diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Runs the verification suite and prints its transcript; returns the exit code.
int run_verify(const verify::Options& options, std::ostream& out);

}  // namespace pgame::cli
