#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (gamma strip, poles, negative lambda).
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Base for every error raised while reading expression text. Carries the
/// 0-based character offset where reading stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at position " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : ParseError(position, "expected " + expected), expected_(std::move(expected)) {}
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::string expected_;
};

class ExponentOutOfRange : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonIntegerLogPower : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonLinearArgument : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonDifferentiableAtZero : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParameterOutOfDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No closed-form rule covers the expression; the numeric path still applies.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class ToleranceNotReached : public Error {
 public:
  using Error::Error;
};

class UnknownCheckId : public Error {
 public:
  using Error::Error;
};

}  // namespace dlap
