#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combalg::cli {

// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kNegative = 1, kInconclusive = 2, kUsage = 3 };

// Runs one command line (without the program name). Normal output goes to
// `out`; errors go to `err` and leave `out` untouched.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combalg::cli
