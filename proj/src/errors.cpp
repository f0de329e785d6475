#include "kgheun/errors.hpp"

namespace kgheun {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::singular_path: return "singular-path";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::inversion: return "inversion";
    case ErrorKind::structural: return "structural";
    case ErrorKind::oracle_failure: return "oracle-failure";
    case ErrorKind::witness_failure: return "witness-failure";
    case ErrorKind::grid: return "grid";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind), detail_(message) {}

ConvergenceError::ConvergenceError(const std::string& message, Complex partial_sum,
                                   double last_term, int terms)
    : Error(ErrorKind::convergence, message),
      partial_sum_(partial_sum),
      last_term_(last_term),
      terms_(terms) {}

PoleError::PoleError(const std::string& message, Complex location)
    : Error(ErrorKind::pole, message), location_(location) {}

}  // namespace kgheun
