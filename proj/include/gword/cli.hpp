#pragma once

// The `gword` command line. run() is the whole program minus argv handling,
// so tests can drive it with string vectors and captured streams.

#include <iosfwd>
#include <string>
#include <vector>

#include "gword/error.hpp"

namespace gword::cli {

inline constexpr const char* kVersion = "0.1.0";

/// 0 success, 1 the mathematics said no, 2 bad invocation or input.
enum ExitCode : int { kOk = 0, kFinding = 1, kUsage = 2 };

int exit_code_for(ErrorCode code);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gword::cli
