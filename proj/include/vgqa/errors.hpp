#pragma once

#include <stdexcept>

namespace vgqa {

// Bad input: malformed files, schema violations, unknown names, values out
// of range. Maps to exit code 2 in the CLI.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Network-level failure while talking to a language-model endpoint. Maps to
// exit code 3 in the CLI.
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vgqa
