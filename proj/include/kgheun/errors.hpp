#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kgheun {

using Complex = std::complex<double>;

enum class ErrorKind {
  domain,
  pole,
  degenerate,
  convergence,
  singular_path,
  singular_point,
  inversion,
  structural,
  oracle_failure,
  witness_failure,
  grid,
  config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base error for every failure raised by the library. The kind drives the
/// CLI exit code (configuration errors, mathematical degeneracies, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the "<kind> error: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// A series that did not reach its tail bound within the term budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, Complex partial_sum, double last_term, int terms);

  Complex partial_sum() const noexcept { return partial_sum_; }
  double last_term() const noexcept { return last_term_; }
  int terms() const noexcept { return terms_; }

 private:
  Complex partial_sum_;
  double last_term_;
  int terms_;
};

/// Evaluation landed on a pole; location is reported in the variable the
/// failing routine works in (z for potentials).
class PoleError : public Error {
 public:
  PoleError(const std::string& message, Complex location);

  Complex location() const noexcept { return location_; }

 private:
  Complex location_;
};

}  // namespace kgheun
