#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace surfimp {

enum class ErrorKind {
  domain,
  range,
  singularity,
  convergence,
  model_mismatch,
  usage,
  io,
};

/// Base for every error the engine raises. The kind maps one-to-one onto the
/// status codes of the C API and the CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

/// A vanishing denominator. Carries the frequency and p at which it occurred.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double omega, std::complex<double> p)
      : Error(ErrorKind::singularity, what), omega_(omega), p_(p) {}
  double omega() const noexcept { return omega_; }
  std::complex<double> p() const noexcept { return p_; }

 private:
  double omega_;
  std::complex<double> p_;
};

/// Quadrature or series failed to reach the requested tolerance. The context
/// string names the failing piece (subinterval, contour leg, panel, term).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::string context)
      : Error(ErrorKind::convergence, what + " [" + context + "]"),
        context_(std::move(context)) {}
  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

class ModelMismatchError : public Error {
 public:
  explicit ModelMismatchError(const std::string& what)
      : Error(ErrorKind::model_mismatch, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace surfimp
