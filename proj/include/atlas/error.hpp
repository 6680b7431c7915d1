#pragma once

#include <stdexcept>
#include <string>

namespace atlas {

/// Malformed input: unknown identifiers, non-monotone maps, violated
/// structural invariants of user-supplied data.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A constructed object turned out to be internally inconsistent, e.g. a
/// simplicial identity fails while decomposing a simplex.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace atlas
