#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fahp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Full case-study walkthrough printed by `demo`.
void print_demo(std::ostream& out);

}  // namespace fahp::cli
