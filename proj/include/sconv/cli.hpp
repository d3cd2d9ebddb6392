#pragma once

#include <string>
#include <vector>

namespace sconv::cli {

inline constexpr const char* kToolName = "sconv";
inline constexpr const char* kToolVersion = "1.0.0";

// Runs the CLI on an argv-style vector (without the program name).
// Returns the process exit code: 0 success, 2 input error, 3 domain
// precondition, 4 numerical guard, 5 verification failure.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace sconv::cli
