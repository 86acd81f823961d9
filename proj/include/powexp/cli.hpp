#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powexp::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
    kNonConverged = 4,
};

/// Runs one command line (without the program name). Data goes to `out`;
/// every failure is reported as a single `error: <kind>: <reason>` line on
/// `err`. Files are written only for `figures --out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixed 17-significant-digit rendering used for CSV cells; inf/-inf/nan
/// are spelled out.
std::string format_number(double v);

} // namespace powexp::cli
