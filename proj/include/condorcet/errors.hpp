#pragma once

#include <stdexcept>
#include <string>

namespace condorcet {

// Bad argument values: out-of-range members, malformed relations, invalid files.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested enumeration or elimination exceeds the documented size guard.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called on a value violating its stated precondition
// (e.g. a condition check that needs C1 and C2).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace condorcet
