#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Bad user input: malformed strings, violated preconditions, unknown ids.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined operation (division by zero).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A broken invariant inside the library. Reaching one is a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace ramsey
