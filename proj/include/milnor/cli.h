#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace milnor {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;         // transversality fails at some epsilon
inline constexpr int kExitUsage = 2;         // parse, usage or input error
inline constexpr int kExitInconclusive = 3;  // transversality inconclusive at some epsilon

// Runs the milnor-scope command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace milnor
