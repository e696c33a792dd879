#pragma once

#include <utility>
#include <vector>

#include "teneig/tracker.hpp"

namespace teneig {

struct IterationReport {
  EigenPair pair;
  long evaluations = 0;  ///< calls of apply() on the target tensor
  bool converged = false;
  int iterations = 0;
  /// One entry per evaluation: the NQZ ratio bracket (low, high), or
  /// (lambda, objective A x^m + alpha) for SS-HOPM.
  std::vector<std::pair<double, double>> history;
};

/// Power method for the largest H-eigenvalue of a nonnegative tensor:
/// y = A x^{m-1}, x <- y^{[1/(m-1)]} normalized, lambda the midpoint of the
/// ratio bracket [min, max] of y_i / x_i^{m-1}. Stops when the H residual
/// ||A x^{m-1} - lambda x^{[m-1]}|| drops below tol. A zero iterate
/// component triggers one restart from a perturbed positive vector.
IterationReport nqz(const DenseTensor& a, const Vector& x_init, double tol,
                    long max_eval = 2000);

/// Shifted symmetric higher-order power method for Z-eigenpairs of a
/// symmetric tensor: x <- normalize(A x^{m-1} + alpha x), lambda = x'A x^{m-1}.
/// Stops when ||A x^{m-1} - lambda x|| < tol.
IterationReport sshopm(const DenseTensor& a, double alpha, const Vector& x_init,
                       double tol, long max_eval = 2000);

/// 72 (1 + w): a shift above which SS-HOPM is monotone on D + wC.
double shift_bound_gamma(double w);

}  // namespace teneig
