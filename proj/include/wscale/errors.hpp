#pragma once

#include <stdexcept>
#include <string>

namespace wscale {

// Error taxonomy mirrored by the CLI exit codes:
//   schema_error  -> 2 (malformed input, misconfiguration)
//   numeric_error -> 3 (numeric failure, non-convergence)
//   io_error      -> 4 (filesystem)
// Programmer-contract violations inside the library throw
// std::invalid_argument and are treated like schema errors at the CLI.

struct schema_error : std::runtime_error {
  explicit schema_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wscale
