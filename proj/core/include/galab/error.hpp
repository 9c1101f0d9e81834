#pragma once

#include <stdexcept>
#include <string>

namespace galab {

// Caller passed something malformed: wrong group, missing point, bad option.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (ball size, grid size, group order) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation's documented precondition was violated by otherwise
// well-formed inputs (e.g. a character that exceeds the weight).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace galab
