#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace colombeau {
namespace cli {

// Full command-line front end, argv-style without the program name.
// Writes the JSON report to `out` and diagnostics to `err`; returns the
// process exit code (0 associated/decays/data, 2 negative verdict,
// 3 inconclusive, 1 error).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace colombeau
