#pragma once

#include <stdexcept>
#include <string>

namespace teneig {

/// Failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorKind {
  input,             ///< malformed file, bad flag, dimension mismatch
  domain,            ///< argument outside an operation's domain
  precondition,      ///< e.g. reducible tensor passed to find_odd_z
  singular_curve,    ///< rank-deficient homotopy Jacobian (non-generic start)
  stalled,           ///< step size underflow with a failing corrector
  divergence,        ///< iterate left the escape radius
  budget,            ///< step or evaluation budget exhausted
  refinement_failed, ///< endpoint Newton polish did not converge
  anomaly,           ///< result contradicts a structural guarantee
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace teneig
