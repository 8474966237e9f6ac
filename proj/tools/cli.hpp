#pragma once

#include <ostream>

namespace pdk::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitRuntimeError = 4;

/// Parses argv and runs one subcommand. Results go to out (or --output),
/// diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdk::cli
