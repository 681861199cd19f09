#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covert::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kModelError = 1;
inline constexpr int kConfigError = 2;

/// Entry point of the `covertsim` tool. `args` excludes the program name.
///
/// Subcommands: rate, distlaw, sweep-window, optimize-window, sweep-chunks,
/// optimize-chunks, case1, case2, verify, fig3, fig4, fig5, fig6, fig7.
/// Tables go to `--out DIR` as <name>.csv, or to `out` when no directory is
/// given. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace covert::cli
