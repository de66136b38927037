#pragma once

#include <stdexcept>
#include <string>

namespace citelens {

// Error raised by anything that reads or interprets data: malformed CSV,
// unknown document ids, impossible windows, empty result sets. The CLI maps
// these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document whose observation window would extend past the corpus horizon.
// Distinct type so callers can tell "can't know yet" from "no such thing".
class CensoredError : public DataError {
 public:
  using DataError::DataError;
};

// Bad invocation (flag combinations, overwrite without --force). Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace citelens
