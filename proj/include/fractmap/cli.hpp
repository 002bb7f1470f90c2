#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fractmap::cli {

// Canonical mapping from library operation to the subcommand that
// exposes it; the coverage test walks this table.
struct OpRoute {
  const char* operation;
  const char* subcommand;
};

std::span<const OpRoute> op_routes();

// Full command-line entry point (arguments without the program name).
// Exit codes: 0 success, 1 usage error (help text goes to err),
// 2 data/validation error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fractmap::cli
