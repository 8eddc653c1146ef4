#ifndef POPMATCH_TOOLS_CLI_HPP
#define POPMATCH_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace popmatch::cli {

// Exit codes: 0 success, 1 negative answer (no popular matching, not
// popular, not stable, woman-optimal, equivalence failure), 2 usage or input
// error.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

/// Runs one command. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

} // namespace popmatch::cli

#endif // POPMATCH_TOOLS_CLI_HPP
