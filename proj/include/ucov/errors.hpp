#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ucov {

// Base class for all library errors. The three direct subclasses mirror the
// CLI exit-code families: precondition violations (exit 2), lattice
// obstructions (exit 3) and input parsing failures (exit 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A requested value is not on the rank/winding lattice of the algebra.
// In finite dimensions this obstruction is genuine; it is the reason the
// dyadic ladder demo exists.
class LatticeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A constructor-level invariant failed (unitarity, hermiticity, projection
// spectrum, weight normalization, ...).
class InvariantViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// An eigenvalue of a unitary sits within the configured angular margin of -1,
// so the principal logarithm is not trustworthy.
class BranchFailure : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Consecutive samples of a path are too far apart to interpolate; carries the
// index of the first offending gap.
class GapTooLarge : public PreconditionError {
 public:
  GapTooLarge(std::size_t index, const std::string& what)
      : PreconditionError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class NotALoop : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class RefinementExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotInvertible : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EndpointMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A value that a rounding rule must snap to the integer lattice carries a
// residual above the configured bound. Never silently rounded.
class ResidualTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnreachableTrace : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class NotInLattice : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class RetractionInvalid : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotExact : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace ucov
