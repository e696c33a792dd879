#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "teneig/homotopy.hpp"

namespace teneig {

/// Step control and tolerances for the path trackers.
struct TrackerConfig {
  double newton_tol = 1e-12;
  int max_newton_iters = 10;
  double initial_step = 0.05;
  double min_step = 1e-8;
  double max_step = 0.25;
  double step_grow = 1.5;
  double step_shrink = 0.5;
  int max_steps = 5000;
  /// Defaults to 10 * HomotopyProblem::lambda_bound() + 10.
  std::optional<double> escape_radius;
  /// A corrector (or landing) may move the predicted point by at most this
  /// fraction of the step length; larger moves are treated as branch jumps.
  double max_correction_ratio = 0.5;
  /// refine_at_target refuses starting points with a larger residual.
  double refine_basin = 1e-2;
  /// Residual an endpoint must reach to be accepted as an eigenpair.
  double accept_tol = 1e-10;

  /// Throws ErrorKind::input when the fields are inconsistent.
  void validate() const;
};

/// A computed eigenpair of the target tensor.
struct EigenPair {
  double lambda = 0.0;
  Vector x;
  double residual = 0.0;  ///< ||F(x, lambda)|| including the norm row
  int det_sign = 0;       ///< sign det D_{x,lambda} F, 0 if singular
  EigenKind kind = EigenKind::Z;
};

struct TurningPoint {
  std::size_t index;  ///< first trace point after the sign change
  double t;           ///< interpolated location
};

struct CurveTrace {
  std::vector<CurvePoint> points;
  /// Unit tangents: (n+2)-vectors for Z tracks, (n+1)-vectors du/dt
  /// normalized for H tracks.
  std::vector<Vector> tangents;
  /// dt/ds along the curve at each point (sign changes mark turning points).
  std::vector<double> tangent_t;
  std::vector<TurningPoint> turning_points;
  long evaluations = 0;  ///< tensor passes, one per residual/Jacobian point
  int steps = 0;         ///< accepted predictor-corrector steps
};

struct TrackResult {
  EigenPair pair;
  CurveTrace trace;
};

enum class Direction { forward, backward };

/// Unit tangent of the Z-homotopy curve through w. With a previous tangent
/// the result has positive inner product with it; without one its
/// t-component is positive (negative for Direction::backward).
Vector tangent_z(const HomotopyProblem& problem, const CurvePoint& w,
                 const std::optional<Vector>& previous = std::nullopt,
                 Direction direction = Direction::forward);

/// Pseudo-arclength tracking of the Z-homotopy from `start` until the curve
/// reaches t = 1. Backward launches start from an eigenpair of the target
/// at t = 1 and leave with decreasing t.
TrackResult track_z(const HomotopyProblem& problem, const CurvePoint& start,
                    Direction direction, const TrackerConfig& cfg);

/// Parameter continuation of the H-homotopy in t from its start pair.
TrackResult track_h(const HomotopyProblem& problem, const TrackerConfig& cfg);

/// Newton polish of (x, lambda) on F = H(., ., 1). Throws
/// ErrorKind::refinement_failed when the start is outside the basin or
/// Newton does not reach cfg.accept_tol.
EigenPair refine_at_target(const HomotopyProblem& problem, const Vector& x,
                           double lambda, const TrackerConfig& cfg,
                           int* iterations = nullptr);

}  // namespace teneig
