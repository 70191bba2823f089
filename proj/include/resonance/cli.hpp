#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace resonance::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 validation or usage error, 2 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resonance::cli
