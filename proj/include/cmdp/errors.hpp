#pragma once

#include <stdexcept>
#include <string>

namespace cmdp {

enum class ErrorCode {
  invalid_input,
  precondition,
  not_converged,
  not_found,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorCode::invalid_input, what) {}
};

class PreconditionViolation : public Error {
 public:
  explicit PreconditionViolation(const std::string& what) : Error(ErrorCode::precondition, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorCode::not_found, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

/// Raised by iterative solvers that hit their sweep cap. Carries the last residual.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double residual)
      : Error(ErrorCode::not_converged, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cmdp
