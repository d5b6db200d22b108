#pragma once

#include <stdexcept>
#include <string>

namespace psdeg {

// Malformed input, violated precondition, or out-of-range parameter.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numeric SDP path could not produce a usable answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bound that the theory guarantees was observed to fail.
class GuaranteeViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psdeg
