#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqfem {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (dimension mismatch, bad range, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Matrix is not symmetric positive definite (negative pivot or negative curvature).
class NotSpdError : public Error {
public:
  using Error::Error;
};

/// Iterative solver hit its iteration cap.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double relative_residual, std::size_t iterations)
      : Error(what), relative_residual_(relative_residual), iterations_(iterations) {}

  double relative_residual() const noexcept { return relative_residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

private:
  double relative_residual_;
  std::size_t iterations_;
};

/// Text input could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

#define EQFEM_REQUIRE(cond, msg)                  \
  do {                                            \
    if (!(cond)) throw ::eqfem::ContractError(msg); \
  } while (0)

}  // namespace eqfem
