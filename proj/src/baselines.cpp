#include "teneig/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "teneig/error.hpp"

namespace teneig {

namespace {

void check_common(const DenseTensor& a, const Vector& x_init, double tol,
                  long max_eval, const char* who) {
  if (x_init.size() != a.dim()) {
    throw Error(ErrorKind::input, std::string(who) + ": start length mismatch");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::input, std::string(who) + ": tol must be > 0");
  if (max_eval < 1) {
    throw Error(ErrorKind::input, std::string(who) + ": maxEval must be >= 1");
  }
  if (!x_init.allFinite()) {
    throw Error(ErrorKind::input, std::string(who) + ": start must be finite");
  }
}

Vector int_power(const Vector& x, int p) {
  Vector out = Vector::Ones(x.size());
  for (int k = 0; k < p; ++k) out.array() *= x.array();
  return out;
}

}  // namespace

IterationReport nqz(const DenseTensor& a, const Vector& x_init, double tol,
                    long max_eval) {
  check_common(a, x_init, tol, max_eval, "nqz");
  if (!a.is_nonnegative()) {
    throw Error(ErrorKind::input, "nqz: tensor must be nonnegative");
  }
  if (!(x_init.array() > 0.0).all()) {
    throw Error(ErrorKind::domain, "nqz: start vector must be positive");
  }
  const int m = a.order();
  IterationReport report;
  report.pair.kind = EigenKind::H;
  Vector x = x_init.normalized();
  bool restarted = false;

  while (report.evaluations < max_eval) {
    const Vector y = apply(a, x);
    ++report.evaluations;
    const Vector xm1 = int_power(x, m - 1);
    const Vector ratio = y.cwiseQuotient(xm1);
    const double low = ratio.minCoeff();
    const double high = ratio.maxCoeff();
    const double lambda = 0.5 * (low + high);
    report.history.emplace_back(low, high);
    report.pair.lambda = lambda;
    report.pair.x = x;
    report.pair.residual = (y - lambda * xm1).norm();
    if (report.pair.residual < tol) {
      report.converged = true;
      return report;
    }
    if (report.evaluations >= max_eval) break;
    if (!((y.array() > 0.0).all()) || !y.allFinite()) {
      if (restarted) return report;
      restarted = true;
      x = (x_init.normalized().array() + 1e-2).matrix().normalized();
      continue;
    }
    x = vec_power(y, 1.0 / (m - 1)).normalized();
    ++report.iterations;
  }
  return report;
}

IterationReport sshopm(const DenseTensor& a, double alpha, const Vector& x_init,
                       double tol, long max_eval) {
  check_common(a, x_init, tol, max_eval, "sshopm");
  if (a.symmetry() != Symmetry::symmetric) {
    throw Error(ErrorKind::precondition, "sshopm: tensor must be symmetric");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::input, "sshopm: alpha must be finite and >= 0");
  }
  const double start_norm = x_init.norm();
  if (!(start_norm > 0.0)) {
    throw Error(ErrorKind::domain, "sshopm: start vector must be nonzero");
  }
  IterationReport report;
  report.pair.kind = EigenKind::Z;
  Vector x = x_init / start_norm;

  while (report.evaluations < max_eval) {
    const Vector y = apply(a, x);
    ++report.evaluations;
    const double lambda = x.dot(y);
    report.history.emplace_back(lambda, lambda + alpha);
    report.pair.lambda = lambda;
    report.pair.x = x;
    report.pair.residual = (y - lambda * x).norm();
    if (report.pair.residual < tol) {
      report.converged = true;
      return report;
    }
    if (report.evaluations >= max_eval) break;
    const Vector z = y + alpha * x;
    const double nz = z.norm();
    if (!(nz > std::numeric_limits<double>::min()) || !std::isfinite(nz)) {
      return report;
    }
    x = z / nz;
    ++report.iterations;
  }
  return report;
}

double shift_bound_gamma(double w) {
  if (!(w > 0.0)) throw Error(ErrorKind::domain, "shift_bound_gamma: w must be > 0");
  return 72.0 * (1.0 + w);
}

}  // namespace teneig
