#pragma once

#include <stdexcept>
#include <string>

namespace toricpb {

/// Input that cannot be interpreted at all: bad shapes, bad indices,
/// unparsable text. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// A documented precondition of a mathematical operation does not hold
/// (e.g. complement of a subspace that is not contained in the outer one).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace toricpb
