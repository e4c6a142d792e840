#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace passafe {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;      // replay did not confirm a violation
inline constexpr int kViolation = 2;     // check: Violated; simulate: active collision
inline constexpr int kInconclusive = 3;  // check: state budget; simulate: tick budget
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kFileError = 66;
}  // namespace exit_code

/// Subcommands:
///   check <scenario.json> [--depth N] [--budget N] [--cex PATH]
///   simulate <config.json> [--seed N] [--trace PATH]
///   sweep <spec.json> --out PATH [--jobs N]
///   replay <scenario.json> <trace.jsonl>
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace passafe
