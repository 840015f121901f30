#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qconfine::cli {

inline constexpr const char* tool_name = "qconfine";
inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int { Success = 0, UsageError = 1, ComputationError = 2 };

/// Parses args (without the program name), runs the command and writes the
/// result to out (or --out). Errors go to err as one JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qconfine::cli
