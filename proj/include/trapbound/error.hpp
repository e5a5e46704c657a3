#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trapbound {

enum class ErrorCode {
  Argument = 1,
  Syntax,
  Domain,
  Precondition,
  NoRoot,
  NonConvergence,
  NotDifferentiable,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Base of every error thrown by the library. The C API maps `code()` onto
// tb_status one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error(ErrorCode::Argument, what) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation outside the mathematical domain of a subexpression
// (ln of non-positive, sqrt of negative, division by zero, 0^negative).
class DomainError : public Error {
 public:
  DomainError(const std::string& subexpr, double at, const std::string& why);
  const std::string& subexpression() const noexcept { return subexpr_; }
  double at() const noexcept { return at_; }

 private:
  std::string subexpr_;
  double at_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::Precondition, what) {}
};

class NoRootError : public Error {
 public:
  NoRootError(const std::string& what, double min_abs_g)
      : Error(ErrorCode::NoRoot, what), min_abs_g_(min_abs_g) {}
  double min_abs_g() const noexcept { return min_abs_g_; }

 private:
  double min_abs_g_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double best_estimate)
      : Error(ErrorCode::NonConvergence, what), best_(best_estimate) {}
  double best_estimate() const noexcept { return best_; }

 private:
  double best_;
};

class NotDifferentiableError : public Error {
 public:
  explicit NotDifferentiableError(const std::string& node)
      : Error(ErrorCode::NotDifferentiable,
              "expression is not differentiable at node '" + node + "'") {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace trapbound
