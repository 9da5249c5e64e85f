#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hpasm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `hpasm` tool. CSV goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// printf %.17g, which round-trips every double.
std::string format_number(double x);

}  // namespace hpasm::cli
