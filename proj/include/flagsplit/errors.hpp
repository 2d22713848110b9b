#pragma once

#include <stdexcept>
#include <string>

namespace flagsplit {

/// Bad input: malformed type strings, foreign ids, broken preconditions.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statement that is a theorem failed to hold. Never expected to fire.
class theorem_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Chart construction could not be certified by the point oracle.
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented contract on an argument was broken (e.g. non-splitting section).
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flagsplit
