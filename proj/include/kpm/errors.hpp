#pragma once

#include <stdexcept>
#include <string>

namespace kpm {

// Rejected before any real work happens: bad parameters, unsupported
// configurations, or a request whose enumeration cost exceeds the budget.
// The CLI maps these to exit code 2.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical invariant failed while computing. Valid inputs never
// trigger these; one firing means a formula, a table, or the build is
// broken. The CLI maps these to exit code 1.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDegree : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct DegreeMismatch : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct ReducibleModulus : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct ZeroInverse : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct ZeroParameter : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct BudgetExceeded : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct NotPowerOfTwo : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct NonIntegralCount : VerificationError {
  using VerificationError::VerificationError;
};

struct ParityViolation : VerificationError {
  using VerificationError::VerificationError;
};

struct InjectivityFailure : VerificationError {
  using VerificationError::VerificationError;
};

// Carries the moment order at which a power-moment identity broke, plus
// both sides, so a failure pinpoints the order instead of just "mismatch".
struct IdentityViolation : VerificationError {
  unsigned order;
  std::string lhs;
  std::string rhs;
  IdentityViolation(unsigned order_, std::string lhs_, std::string rhs_)
      : VerificationError("identity violated at order h=" + std::to_string(order_) +
                          ": lhs=" + lhs_ + " rhs=" + rhs_),
        order(order_),
        lhs(std::move(lhs_)),
        rhs(std::move(rhs_)) {}
};

}  // namespace kpm
