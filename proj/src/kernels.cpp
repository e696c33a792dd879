#include <omp.h>

#include <vector>

#include "teneig/error.hpp"
#include "teneig/tensor.hpp"

namespace teneig {

namespace {

// Below this many entries the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 1 << 14;

void check_dims(const DenseTensor& a, const Vector& x, const char* op) {
  if (x.size() != a.dim()) {
    throw Error(ErrorKind::input, std::string(op) + ": vector length " +
                                      std::to_string(x.size()) +
                                      " does not match tensor dimension " +
                                      std::to_string(a.dim()));
  }
}

// Contracts the trailing `modes` indices of a row slice with x, in place in
// `buf` (which must hold at least slice_size() / n entries when modes >= 1).
// On return the first slice_size() / n^modes entries hold the result.
const double* contract_tail(std::span<const double> row, const double* x,
                            int n, int modes, std::vector<double>& buf) {
  if (modes == 0) return row.data();
  std::size_t len = row.size() / static_cast<std::size_t>(n);
  for (std::size_t k = 0; k < len; ++k) {
    const double* src = row.data() + k * n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += src[j] * x[j];
    buf[k] = s;
  }
  for (int step = 1; step < modes; ++step) {
    len /= static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < len; ++k) {
      const double* src = buf.data() + k * n;
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += src[j] * x[j];
      buf[k] = s;
    }
  }
  return buf.data();
}

// Mode-product sum for one row of a general tensor, via prefix and suffix
// products over each tail tuple.
double general_row(std::span<const double> row, const double* x, int n, int m,
                   double* jac_row) {
  const int tail_len = m - 1;
  std::vector<int> tail(static_cast<std::size_t>(tail_len), 0);
  std::vector<double> prefix(static_cast<std::size_t>(tail_len) + 1);
  std::vector<double> suffix(static_cast<std::size_t>(tail_len) + 1);
  for (int j = 0; j < n; ++j) jac_row[j] = 0.0;
  double value = 0.0;
  for (std::size_t off = 0; off < row.size(); ++off) {
    const double a = row[off];
    if (a != 0.0) {
      prefix[0] = 1.0;
      for (int q = 0; q < tail_len; ++q) prefix[q + 1] = prefix[q] * x[tail[q]];
      suffix[tail_len] = 1.0;
      for (int q = tail_len; q-- > 0;) suffix[q] = suffix[q + 1] * x[tail[q]];
      for (int q = 0; q < tail_len; ++q) {
        jac_row[tail[q]] += a * prefix[q] * suffix[q + 1];
      }
      value += a * prefix[tail_len];
    }
    next_index(tail, n);
  }
  return value;
}

}  // namespace

Vector apply(const DenseTensor& a, const Vector& x) {
  check_dims(a, x, "apply");
  const int n = a.dim();
  const int m = a.order();
  Vector y(n);
  const double* xp = x.data();
#pragma omp parallel if (a.size() >= kParallelThreshold)
  {
    std::vector<double> buf(a.slice_size() / n);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double* g = contract_tail(a.slice(i), xp, n, m - 2, buf);
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += g[j] * xp[j];
      y[i] = s;
    }
  }
  return y;
}

Linearized apply_and_derivative(const DenseTensor& a, const Vector& x) {
  check_dims(a, x, "derivative");
  const int n = a.dim();
  const int m = a.order();
  Linearized out{Vector(n), Matrix(n, n)};
  const double* xp = x.data();
  const bool semi = a.symmetry() != Symmetry::general;
#pragma omp parallel if (a.size() >= kParallelThreshold)
  {
    std::vector<double> buf(semi ? a.slice_size() / n : 0);
    std::vector<double> jrow(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      double value = 0.0;
      if (semi) {
        // Row i of A x^{m-2}; the Jacobian row is (m-1) times it.
        const double* g = contract_tail(a.slice(i), xp, n, m - 2, buf);
        for (int j = 0; j < n; ++j) {
          value += g[j] * xp[j];
          jrow[j] = (m - 1) * g[j];
        }
      } else {
        value = general_row(a.slice(i), xp, n, m, jrow.data());
      }
      out.value[i] = value;
      for (int j = 0; j < n; ++j) out.jacobian(i, j) = jrow[j];
    }
  }
  return out;
}

Matrix derivative(const DenseTensor& a, const Vector& x) {
  return apply_and_derivative(a, x).jacobian;
}

}  // namespace teneig
