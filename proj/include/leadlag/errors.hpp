#pragma once

#include <stdexcept>
#include <string>

namespace leadlag {

// Raised on precondition violations (bad shapes, invalid flags, non-nested
// partitions, ...). The CLI maps this to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised on malformed external data (CSV parse failures carry a line number).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an output file cannot be produced; the CLI maps this to exit
// code 1 (runtime), unlike input problems which are validation failures.
class write_error : public io_error {
 public:
  using io_error::io_error;
};

}  // namespace leadlag
