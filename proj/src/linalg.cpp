#include "teneig/linalg.hpp"

#include <cmath>

namespace teneig {

DenseLU::DenseLU(const Matrix& m) : lu_(m) {
  const double scale = m.cwiseAbs().maxCoeff();
  const Matrix& packed = lu_.matrixLU();
  int sign = static_cast<int>(lu_.permutationP().determinant());
  bool ok = scale > 0.0 && std::isfinite(scale);
  for (Eigen::Index i = 0; ok && i < packed.rows(); ++i) {
    const double pivot = packed(i, i);
    if (!(std::abs(pivot) > kSingularPivotRatio * scale)) ok = false;
    if (pivot < 0.0) sign = -sign;
  }
  nonsingular_ = ok;
  det_sign_ = ok ? sign : 0;
}

std::optional<Vector> null_vector(const Matrix& wide) {
  const Eigen::Index k = wide.rows();
  Eigen::ColPivHouseholderQR<Matrix> qr(wide.transpose());
  qr.setThreshold(1e-13);
  if (qr.rank() < k) return std::nullopt;
  // The last column of Q is orthogonal to range(wide^T), i.e. in ker(wide).
  Matrix q = qr.householderQ();
  Vector v = q.col(k);
  return v.normalized();
}

}  // namespace teneig
