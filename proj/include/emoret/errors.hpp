#pragma once

#include <stdexcept>
#include <string>

namespace emoret {

// Bad user input: missing files, malformed formats, shape/config mismatches
// known before a run starts. The CLI maps this to exit code 2; everything
// else escaping a command maps to exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace emoret
