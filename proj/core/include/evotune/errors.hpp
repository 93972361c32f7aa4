#pragma once

#include <stdexcept>
#include <string>

namespace evotune {

// Bad input data: malformed FEN/EPD/parameter files, illegal moves,
// inconsistent positions. CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad invocation: unknown backend selector, contradictory flags.
// CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// External engine/subprocess failure: timeouts, protocol violations,
// unexpected exit. CLI maps this to exit code 3.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evotune
