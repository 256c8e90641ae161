#pragma once

// Command-line front end: `quench <lz|chain|sweep|fit> [flags]`.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace quench::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kValidation = 2,
    kNumerical = 3,
};

/// Run one command. `args` excludes the program name. Messages go to `out`
/// and `err`; result files go to the --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rates from either "log MIN MAX COUNT" or an explicit list of positive values.
std::vector<double> parse_rates(const std::vector<std::string>& tokens);

}  // namespace quench::cli
