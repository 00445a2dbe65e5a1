#pragma once

#include <stdexcept>
#include <string>

namespace versal {

/// Operands live in different rings (variables, field or ordering differ).
class RingMismatch : public std::invalid_argument {
 public:
  explicit RingMismatch(const std::string& what) : std::invalid_argument("ring mismatch: " + what) {}
};

/// Malformed textual input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Input is mathematically outside the supported class (non-isolated,
/// not a regular sequence, ...). Maps to CLI exit code 1.
class MathRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotIsolated : public MathRejection {
 public:
  NotIsolated() : MathRejection("non-isolated singular locus") {}
};

class NotRegularSequence : public MathRejection {
 public:
  NotRegularSequence() : MathRejection("equations do not form a regular sequence") {}
};

/// Extension endpoints (or hom source/target) do not match.
class EndpointMismatch : public std::invalid_argument {
 public:
  explicit EndpointMismatch(const std::string& what) : std::invalid_argument("endpoint mismatch: " + what) {}
};

/// Two liftings do not reduce to the same family over the smaller base.
class ReductionMismatch : public std::invalid_argument {
 public:
  explicit ReductionMismatch(const std::string& what) : std::invalid_argument("reduction mismatch: " + what) {}
};

/// Families to be glued do not agree over the common quotient.
class RestrictionMismatch : public std::invalid_argument {
 public:
  explicit RestrictionMismatch(const std::string& what) : std::invalid_argument("restriction mismatch: " + what) {}
};

/// A result that theory guarantees failed to materialize.
class InternalConsistency : public std::logic_error {
 public:
  explicit InternalConsistency(const std::string& what) : std::logic_error("internal consistency failure: " + what) {}
};

}  // namespace versal
