#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "teneig/tensor.hpp"

namespace teneig {

enum class EigenKind { Z, H };

const char* to_string(EigenKind kind) noexcept;

/// One point w = (x, lambda, t) on a homotopy solution curve.
struct CurvePoint {
  Vector x;
  double lambda = 0.0;
  double t = 0.0;
  double residual_norm = 0.0;
};

/// Residual and both Jacobian blocks of a homotopy at one point.
struct HomotopyLinearization {
  Vector residual;        ///< H(x, lambda, t), length n+1
  Matrix state_jacobian;  ///< D_{x,lambda} H, (n+1) x (n+1)
  Vector t_jacobian;      ///< D_t H, length n+1
};

/// Linear homotopy along A(t) = (1-t) x1 o ... o x1 + t A for the Z system
///   [A(t) x^{m-1} - lambda x ; x'x - 1]
/// or the H system
///   [A(t) x^{m-1} - lambda x^{[m-1]} ; x'x - 1].
///
/// A(t) is never materialized: the rank-1 part is evaluated from its outer
/// product structure. General (non-semi-symmetric) targets are replaced by
/// their semi-symmetrization at construction, which leaves A x^{m-1}
/// unchanged and enables the cheap derivative path.
class HomotopyProblem {
 public:
  HomotopyProblem(std::shared_ptr<const DenseTensor> target, Vector generator,
                  EigenKind kind);

  const DenseTensor& target() const noexcept { return *target_; }
  std::shared_ptr<const DenseTensor> target_ptr() const noexcept {
    return target_;
  }
  const Vector& generator() const noexcept { return generator_; }
  EigenKind kind() const noexcept { return kind_; }
  int order() const noexcept { return target_->order(); }
  int dim() const noexcept { return target_->dim(); }

  /// The unique positive eigenpair of the start tensor, at t = 0.
  CurvePoint start_eigenpair() const;

  Vector residual(const Vector& x, double lambda, double t) const;
  Matrix jacobian_wrt_state(const Vector& x, double lambda, double t) const;
  Vector jacobian_wrt_t(const Vector& x, double lambda, double t) const;

  /// Residual and Jacobians sharing one tensor pass (one evaluation of
  /// A x^{m-1} in the bookkeeping sense).
  HomotopyLinearization linearize(const Vector& x, double lambda,
                                  double t) const;

  /// Bound on |lambda| along the curve: max of the Z-bounds of A and A0.
  double lambda_bound() const;

 private:
  std::shared_ptr<const DenseTensor> target_;
  Vector generator_;
  EigenKind kind_;
};

/// Generic start generator: i.i.d. uniform(0,1) components rescaled so the
/// norm is uniform in [norm_low, norm_high].
Vector random_generator(int dim, std::mt19937_64& rng, double norm_low = 0.9,
                        double norm_high = 1.1);

/// n^{-(m-1)/m} (1, ..., 1): its H start pair is (1, e / sqrt(n)).
Vector uniform_h_generator(int dim, int order);

}  // namespace teneig
