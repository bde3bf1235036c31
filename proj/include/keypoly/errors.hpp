#pragma once

#include <stdexcept>
#include <string>

namespace keypoly {

// Every failure raised by the library derives from Error. The CLI maps the
// three families below onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit code 1: a checked mathematical statement did not hold.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

class StructureViolation : public AssertionFailure {
 public:
  StructureViolation(std::string clause, const std::string& detail)
      : AssertionFailure("structure violation [" + clause + "]: " + detail), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

// Exit code 2: the answer could not be certified from the available precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class PrecisionLoss : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class Undecided : public PrecisionError {
 public:
  explicit Undecided(unsigned depth, const std::string& what = "")
      : PrecisionError("undecided within approximation depth " + std::to_string(depth) +
                       (what.empty() ? "" : ": " + what)),
        depth_(depth) {}
  unsigned depth() const noexcept { return depth_; }

 private:
  unsigned depth_;
};

// Exit code 3: malformed input or a violated operation contract.
class InputError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : InputError("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ExponentError : public InputError {
 public:
  using InputError::InputError;
};

class UndefinedSum : public InputError {
 public:
  using InputError::InputError;
};

class ZeroDivisor : public InputError {
 public:
  using InputError::InputError;
};

class NotCoprime : public InputError {
 public:
  using InputError::InputError;
};

class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace keypoly
