#pragma once

#include <stdexcept>
#include <string>

namespace sysarith {

/// Malformed or out-of-domain input (bad primes, non-squarefree values, ...).
class input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well formed but describes a trivial object, e.g. a square
/// class generating the trivial extension.
class degenerate_input_error : public input_error {
public:
  using input_error::input_error;
};

/// A bounded search ran out of candidates or work budget.
class no_candidate_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A stated precondition between two arguments does not hold.
class precondition_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace sysarith
