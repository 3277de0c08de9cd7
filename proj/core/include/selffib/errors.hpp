#pragma once

#include <stdexcept>
#include <string>

namespace selffib {

// Bad argument values: zero modulus, composite where a prime is required,
// calling the odd-prime valuation on p = 2 or 5, and similar.
class domain_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A configurable resource cap was exceeded (exact-Fibonacci index limit,
// divisor-count cap).
class limit_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A result does not fit in 64 bits. Raised instead of wrapping.
class overflow_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// c(k) requested for a class that has no members.
class empty_class_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The entry-point iteration did not reach a fixed point within the step
// budget. Should never fire; kept as a hard stop instead of a hang.
class no_convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace selffib
