#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace capture::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInvalidConfig = 2, kSolverFailure = 3 };

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

// Runs one invocation. args excludes the program name. Results go to `out`
// unless redirected by --out or CAPTURE_OUT_DIR; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capture::cli
