#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusterent::cli {

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // error JSON written to `err`
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. `in` backs `--input -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

/// Formats a double with 17 significant digits.
std::string format_double(double x);

}  // namespace clusterent::cli
