#pragma once

#include <optional>

#include "teneig/tensor.hpp"

namespace teneig {

/// Pivot below this fraction of the matrix max-norm counts as zero.
inline constexpr double kSingularPivotRatio = 1e-12;

/// Dense LU with partial pivoting plus the sign bookkeeping the degree
/// arguments need.
class DenseLU {
 public:
  explicit DenseLU(const Matrix& m);

  /// False when some pivot is below kSingularPivotRatio * max|m_ij|.
  bool nonsingular() const noexcept { return nonsingular_; }
  /// Sign of det(m): product of pivot signs times the permutation parity,
  /// or 0 when the factorization is numerically singular.
  int det_sign() const noexcept { return det_sign_; }
  Vector solve(const Vector& rhs) const { return lu_.solve(rhs); }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  bool nonsingular_ = false;
  int det_sign_ = 0;
};

/// Unit vector spanning the null space of a k x (k+1) matrix, computed from
/// a column-pivoted QR of its transpose; nullopt if the rank is below k.
std::optional<Vector> null_vector(const Matrix& wide);

}  // namespace teneig
