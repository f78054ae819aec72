#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace greenbvp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRefused = 2;  // resonance or domain violation
inline constexpr int kExitSolver = 3;

// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greenbvp::cli
