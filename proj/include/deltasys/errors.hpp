#pragma once

#include <stdexcept>
#include <string>

namespace deltasys {

/// An argument violates an operation's documented parameter range.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is only defined for a specific uniformity (e.g. 3-graphs).
class UnsupportedUniformity : public ParameterError {
public:
  using ParameterError::ParameterError;
};

/// A design specification fails the divisibility conditions.
class AdmissibilityError : public ParameterError {
public:
  using ParameterError::ParameterError;
};

/// A numeric precondition of a constructive step does not hold.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// An exhaustive constructive search gave up without producing an object.
class SearchFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A result contradicts a trusted classification; carries a diagnostic dump.
class ClassificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

} // namespace deltasys
