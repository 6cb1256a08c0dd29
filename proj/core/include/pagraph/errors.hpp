#pragma once

#include <stdexcept>

namespace pagraph {

// Bad manifest / CLI configuration. Exits with code 2 at the CLI boundary.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input file (CSV, edge list, checkpoint). Exit code 3.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite loss or other numeric breakdown during training. Exit code 4.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pagraph
