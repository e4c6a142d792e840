#pragma once

#include <stdexcept>

namespace passafe {

/// Malformed or out-of-bounds input (configuration text, traces, CLI values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace passafe
