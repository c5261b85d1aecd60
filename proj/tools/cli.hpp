#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revmark::cli {

// Exit status contract.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kNotAuthentic = 2;
inline constexpr int kRecoveryRefused = 3;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revmark::cli
