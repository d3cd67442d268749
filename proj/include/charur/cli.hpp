#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charur {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 internal numeric failure, 2 contract violation (error JSON on `err`),
/// 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charur
