// Serial literal summations over the full index space. Slow on purpose: they
// follow the defining formulas term by term and serve as test oracles.

#include <vector>

#include "teneig/error.hpp"
#include "teneig/tensor.hpp"

namespace teneig::reference {

Vector apply(const DenseTensor& a, const Vector& x) {
  if (x.size() != a.dim()) throw Error(ErrorKind::input, "dimension mismatch");
  const int n = a.dim();
  Vector y = Vector::Zero(n);
  std::vector<int> index(static_cast<std::size_t>(a.order()), 0);
  for (double entry : a.entries()) {
    double term = entry;
    for (std::size_t q = 1; q < index.size(); ++q) term *= x[index[q]];
    y[index[0]] += term;
    next_index(index, n);
  }
  return y;
}

Matrix derivative(const DenseTensor& a, const Vector& x) {
  if (x.size() != a.dim()) throw Error(ErrorKind::input, "dimension mismatch");
  const int n = a.dim();
  const int m = a.order();
  Matrix jac = Matrix::Zero(n, n);
  std::vector<int> index(static_cast<std::size_t>(m), 0);
  for (double entry : a.entries()) {
    for (int k = 1; k < m; ++k) {
      double term = entry;
      for (int q = 1; q < m; ++q) {
        if (q != k) term *= x[index[q]];
      }
      jac(index[0], index[k]) += term;
    }
    next_index(index, n);
  }
  return jac;
}

}  // namespace teneig::reference
