#pragma once

#include <stdexcept>
#include <string>

namespace vm {

// Bad argument combination (k out of range, missing kappa, malformed pattern...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query outside what a table or truncation can serve. The message names the
// limit that would be needed.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Allocation failures, brute-force guards, unreadable cache files.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vm
