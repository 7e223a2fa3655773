#ifndef LORENTZSEQ_TOOLS_COMMANDS_HPP
#define LORENTZSEQ_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

namespace lorentzseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, dispatches to the subcommand and maps errors to exit codes:
/// 0 success, 1 computation error, 2 usage or validation error.
int run(int argc, const char* const* argv);

/// Convenience overload for tests; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace lorentzseq::cli

#endif  // LORENTZSEQ_TOOLS_COMMANDS_HPP
