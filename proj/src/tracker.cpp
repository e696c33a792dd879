#include "teneig/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "teneig/error.hpp"
#include "teneig/linalg.hpp"

namespace teneig {

void TrackerConfig::validate() const {
  if (!(newton_tol > 0.0)) throw Error(ErrorKind::input, "newton_tol must be > 0");
  if (!(min_step > 0.0 && min_step <= initial_step &&
        initial_step <= max_step)) {
    throw Error(ErrorKind::input,
                "step bounds must satisfy 0 < min_step <= initial_step <= "
                "max_step");
  }
  if (max_newton_iters < 1 || max_steps < 1) {
    throw Error(ErrorKind::input, "iteration budgets must be positive");
  }
  if (!(step_grow >= 1.0) || !(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw Error(ErrorKind::input, "need step_grow >= 1 and 0 < step_shrink < 1");
  }
}

namespace {

// Packs (x, lambda, t) as one (n+2)-vector.
Vector pack(const Vector& x, double lambda, double t) {
  const Eigen::Index n = x.size();
  Vector w(n + 2);
  w.head(n) = x;
  w[n] = lambda;
  w[n + 1] = t;
  return w;
}

CurvePoint unpack(const Vector& w, double residual_norm) {
  const Eigen::Index n = w.size() - 2;
  return CurvePoint{w.head(n), w[n], w[n + 1], residual_norm};
}

Matrix full_jacobian(const HomotopyLinearization& lin) {
  const Eigen::Index rows = lin.residual.size();
  Matrix j(rows, rows + 1);
  j.leftCols(rows) = lin.state_jacobian;
  j.col(rows) = lin.t_jacobian;
  return j;
}

Vector tangent_from(const HomotopyLinearization& lin,
                    const std::optional<Vector>& previous,
                    Direction direction) {
  const Matrix j = full_jacobian(lin);
  const Eigen::Index k = j.rows();
  Vector border = Vector::Zero(k + 1);
  if (previous) {
    border = *previous;
  } else {
    border[k] = direction == Direction::forward ? 1.0 : -1.0;
  }
  Matrix bordered(k + 1, k + 1);
  bordered.topRows(k) = j;
  bordered.row(k) = border.transpose();
  DenseLU lu(bordered);
  if (lu.nonsingular()) {
    Vector rhs = Vector::Zero(k + 1);
    rhs[k] = 1.0;
    Vector v = lu.solve(rhs);
    if (v.allFinite() && v.norm() > 0.0) return v.normalized();
  }
  std::optional<Vector> v = null_vector(j);
  if (!v) {
    throw Error(ErrorKind::singular_curve,
                "homotopy Jacobian is rank deficient; resample the start "
                "generator");
  }
  if (v->dot(border) < 0.0) *v = -*v;
  return *v;
}

struct Counter {
  long evaluations = 0;
};

struct CorrectorResult {
  bool ok = false;
  Vector w;
  HomotopyLinearization lin;
  int iterations = 0;
};

// Newton on [H(w); tangent'(w - pred)] = 0 from the predicted point.
CorrectorResult correct_z(const HomotopyProblem& problem, const Vector& pred,
                          const Vector& tangent, const TrackerConfig& cfg,
                          Counter& counter) {
  const Eigen::Index n = problem.dim();
  const double level = tangent.dot(pred);
  CorrectorResult out;
  out.w = pred;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    out.lin = problem.linearize(out.w.head(n), out.w[n], out.w[n + 1]);
    ++counter.evaluations;
    const double h = out.lin.residual.norm();
    if (!std::isfinite(h)) return out;
    if (h <= cfg.newton_tol) {
      out.ok = true;
      out.iterations = it;
      return out;
    }
    if (it >= cfg.max_newton_iters || h > 2.0 * previous) return out;
    previous = h;
    Matrix system(n + 2, n + 2);
    system.topRows(n + 1) = full_jacobian(out.lin);
    system.row(n + 1) = tangent.transpose();
    DenseLU lu(system);
    if (!lu.nonsingular()) return out;
    Vector rhs(n + 2);
    rhs.head(n + 1) = -out.lin.residual;
    rhs[n + 1] = level - tangent.dot(out.w);
    const Vector delta = lu.solve(rhs);
    if (!delta.allFinite()) return out;
    out.w += delta;
  }
}

struct TargetNewton {
  bool ok = false;
  Vector x;
  double lambda = 0.0;
  HomotopyLinearization lin;
  double residual = 0.0;
  int iterations = 0;
};

// Newton on F(x, lambda) = H(x, lambda, 1) = 0.
TargetNewton newton_at_target(const HomotopyProblem& problem, Vector x,
                              double lambda, const TrackerConfig& cfg,
                              Counter& counter) {
  const Eigen::Index n = problem.dim();
  TargetNewton out;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    out.lin = problem.linearize(x, lambda, 1.0);
    ++counter.evaluations;
    out.residual = out.lin.residual.norm();
    out.x = x;
    out.lambda = lambda;
    out.iterations = it;
    if (!std::isfinite(out.residual)) return out;
    if (out.residual <= cfg.newton_tol || it >= cfg.max_newton_iters ||
        out.residual > 2.0 * previous) {
      break;
    }
    previous = out.residual;
    DenseLU lu(out.lin.state_jacobian);
    if (!lu.nonsingular()) break;
    const Vector delta = lu.solve(-out.lin.residual);
    if (!delta.allFinite()) break;
    x += delta.head(n);
    lambda += delta[n];
  }
  out.ok = out.residual <= cfg.accept_tol;
  return out;
}

EigenPair to_pair(const HomotopyProblem& problem, const TargetNewton& r) {
  EigenPair pair;
  pair.lambda = r.lambda;
  pair.x = r.x;
  pair.residual = r.residual;
  pair.det_sign = DenseLU(r.lin.state_jacobian).det_sign();
  pair.kind = problem.kind();
  if (pair.kind == EigenKind::Z) {
    const double bound = z_bound(problem.target());
    if (std::abs(pair.lambda) > bound * (1.0 + 1e-12) + 1e-12) {
      std::ostringstream msg;
      msg << "Z-eigenvalue " << pair.lambda << " exceeds the bound " << bound;
      throw Error(ErrorKind::anomaly, msg.str());
    }
  }
  return pair;
}

double escape_radius(const HomotopyProblem& problem, const TrackerConfig& cfg) {
  return cfg.escape_radius.value_or(10.0 * problem.lambda_bound() + 10.0);
}

void check_escape(const Vector& x, double lambda, double radius) {
  const double size = std::sqrt(x.squaredNorm() + lambda * lambda);
  if (!(size <= radius)) {
    std::ostringstream msg;
    msg << "curve left the escape radius (|(x, lambda)| = " << size << " > "
        << radius << "); Z-eigenvalues of a nonnegative tensor are bounded, "
        << "so this signals a bad input or configuration";
    throw Error(ErrorKind::divergence, msg.str());
  }
}

[[noreturn]] void stalled(double t, double step) {
  std::ostringstream msg;
  msg << "tracking stalled at t = " << t << " (step " << step
      << " below the minimum)";
  throw Error(ErrorKind::stalled, msg.str());
}

[[noreturn]] void out_of_steps(int steps, double t) {
  std::ostringstream msg;
  msg << "step budget of " << steps << " exhausted at t = " << t;
  throw Error(ErrorKind::budget, msg.str());
}

// Points of a curve with t < 1 lie in the open positive orthant.
bool leaves_orthant(const Vector& x, double lambda) {
  return x.minCoeff() < -1e-8 || lambda < 0.0;
}

}  // namespace

Vector tangent_z(const HomotopyProblem& problem, const CurvePoint& w,
                 const std::optional<Vector>& previous, Direction direction) {
  return tangent_from(problem.linearize(w.x, w.lambda, w.t), previous,
                      direction);
}

EigenPair refine_at_target(const HomotopyProblem& problem, const Vector& x,
                           double lambda, const TrackerConfig& cfg,
                           int* iterations) {
  const double start = problem.residual(x, lambda, 1.0).norm();
  if (!(start <= cfg.refine_basin)) {
    std::ostringstream msg;
    msg << "refinement start residual " << start << " exceeds the basin "
        << cfg.refine_basin;
    throw Error(ErrorKind::refinement_failed, msg.str());
  }
  Counter counter;
  const TargetNewton r = newton_at_target(problem, x, lambda, cfg, counter);
  if (iterations) *iterations = r.iterations;
  if (!r.ok) {
    std::ostringstream msg;
    msg << "refinement reached residual " << r.residual << " only";
    throw Error(ErrorKind::refinement_failed, msg.str());
  }
  return to_pair(problem, r);
}

TrackResult track_z(const HomotopyProblem& problem, const CurvePoint& start,
                    Direction direction, const TrackerConfig& cfg) {
  if (problem.kind() != EigenKind::Z) {
    throw Error(ErrorKind::input, "track_z needs a Z homotopy");
  }
  cfg.validate();
  const Eigen::Index n = problem.dim();
  if (direction == Direction::backward && start.t != 1.0) {
    throw Error(ErrorKind::input, "backward launches must start at t = 1");
  }
  const double radius = escape_radius(problem, cfg);
  Counter counter;
  TrackResult result;
  CurveTrace& trace = result.trace;

  Vector w = pack(start.x, start.lambda, start.t);
  HomotopyLinearization lin = problem.linearize(start.x, start.lambda, start.t);
  ++counter.evaluations;
  const double start_residual = lin.residual.norm();
  if (!(start_residual <= std::max(cfg.newton_tol, cfg.accept_tol))) {
    throw Error(ErrorKind::input, "track_z: start point is not on the curve");
  }
  Vector tangent = tangent_from(lin, std::nullopt, direction);
  trace.points.push_back(unpack(w, start_residual));
  trace.tangents.push_back(tangent);
  trace.tangent_t.push_back(tangent[n + 1]);

  auto record = [&](const Vector& wn, double residual, const Vector& tn) {
    const double tau_old = trace.tangent_t.back();
    const double tau_new = tn[n + 1];
    trace.points.push_back(unpack(wn, residual));
    trace.tangents.push_back(tn);
    trace.tangent_t.push_back(tau_new);
    if ((tau_old > 0.0 && tau_new < 0.0) || (tau_old < 0.0 && tau_new > 0.0)) {
      const double frac = tau_old / (tau_old - tau_new);
      const double t0 = trace.points[trace.points.size() - 2].t;
      trace.turning_points.push_back(
          {trace.points.size() - 1, t0 + frac * (wn[n + 1] - t0)});
    }
    ++trace.steps;
  };

  // Lands on t = 1 from a point near the curve; true on success.
  auto try_land = [&](const Vector& from, double step) -> bool {
    const TargetNewton r =
        newton_at_target(problem, from.head(n), from[n], cfg, counter);
    if (!r.ok) return false;
    const double moved = std::sqrt((r.x - from.head(n)).squaredNorm() +
                                   std::pow(r.lambda - from[n], 2));
    if (moved > cfg.max_correction_ratio * step + 10.0 * cfg.newton_tol) {
      return false;
    }
    const Vector wn = pack(r.x, r.lambda, 1.0);
    Vector tn;
    try {
      tn = tangent_from(r.lin, tangent, direction);
    } catch (const Error&) {
      // Singular endpoint: no tangent, keep the last one for the record.
      tn = tangent;
    }
    record(wn, r.residual, tn);
    result.pair = to_pair(problem, r);
    return true;
  };

  double step = cfg.initial_step;
  for (;;) {
    if (trace.steps >= cfg.max_steps) out_of_steps(cfg.max_steps, w[n + 1]);
    if (step < cfg.min_step) stalled(w[n + 1], step);

    const double tau = tangent[n + 1];
    const double t = w[n + 1];
    Vector pred = w + step * tangent;
    if (tau > 0.0 && pred[n + 1] >= 1.0) {
      const double land_step = (1.0 - t) / tau;
      pred = w + land_step * tangent;
      pred[n + 1] = 1.0;
      if (try_land(pred, land_step)) break;
      step = std::min(step, land_step) * cfg.step_shrink;
      continue;
    }

    CorrectorResult c = correct_z(problem, pred, tangent, cfg, counter);
    const bool close = c.ok && (c.w - pred).norm() <=
                                   cfg.max_correction_ratio * step;
    if (!close) {
      step *= cfg.step_shrink;
      continue;
    }
    const double t_new = c.w[n + 1];
    if (t_new > 1.0) {
      if (try_land(c.w, step)) break;
      step *= cfg.step_shrink;
      continue;
    }
    if (leaves_orthant(c.w.head(n), c.w[n])) {
      step *= cfg.step_shrink;
      continue;
    }
    check_escape(c.w.head(n), c.w[n], radius);
    Vector next_tangent = tangent_from(c.lin, tangent, direction);
    w = c.w;
    record(w, c.lin.residual.norm(), next_tangent);
    tangent = next_tangent;
    if (c.iterations <= 3) {
      step = std::min(step * cfg.step_grow, cfg.max_step);
    }
  }
  trace.evaluations = counter.evaluations;
  return result;
}

TrackResult track_h(const HomotopyProblem& problem, const TrackerConfig& cfg) {
  if (problem.kind() != EigenKind::H) {
    throw Error(ErrorKind::input, "track_h needs an H homotopy");
  }
  cfg.validate();
  const Eigen::Index n = problem.dim();
  const double radius = escape_radius(problem, cfg);
  Counter counter;
  TrackResult result;
  CurveTrace& trace = result.trace;

  CurvePoint point = problem.start_eigenpair();
  Vector u(n + 1);
  u.head(n) = point.x;
  u[n] = point.lambda;
  double t = 0.0;
  HomotopyLinearization lin = problem.linearize(point.x, point.lambda, t);
  ++counter.evaluations;

  auto velocity = [&](const HomotopyLinearization& l, double at) -> Vector {
    DenseLU lu(l.state_jacobian);
    if (!lu.nonsingular()) {
      std::ostringstream msg;
      msg << "H-homotopy state Jacobian is singular at t = " << at
          << "; the iterate has likely touched the orthant boundary";
      throw Error(ErrorKind::anomaly, msg.str());
    }
    return lu.solve(-l.t_jacobian);
  };
  auto push = [&](const Vector& du, double residual) {
    trace.points.push_back(CurvePoint{u.head(n), u[n], t, residual});
    trace.tangents.push_back(du.normalized());
    trace.tangent_t.push_back(1.0 / std::sqrt(1.0 + du.squaredNorm()));
  };

  Vector du = velocity(lin, t);
  push(du, lin.residual.norm());

  double step = cfg.initial_step;
  while (t < 1.0) {
    if (trace.steps >= cfg.max_steps) out_of_steps(cfg.max_steps, t);
    if (step < cfg.min_step) stalled(t, step);
    const double dt = std::min(step, 1.0 - t);
    const double t_new = (dt == 1.0 - t) ? 1.0 : t + dt;
    const Vector pred = u + dt * du;

    // Newton at fixed t_new.
    Vector v = pred;
    bool ok = false;
    int iterations = 0;
    HomotopyLinearization cl;
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0;; ++it) {
      cl = problem.linearize(v.head(n), v[n], t_new);
      ++counter.evaluations;
      const double h = cl.residual.norm();
      if (!std::isfinite(h)) break;
      if (h <= cfg.newton_tol) {
        ok = true;
        iterations = it;
        break;
      }
      if (it >= cfg.max_newton_iters || h > 2.0 * previous) break;
      previous = h;
      DenseLU lu(cl.state_jacobian);
      if (!lu.nonsingular()) break;
      const Vector delta = lu.solve(-cl.residual);
      if (!delta.allFinite()) break;
      v += delta;
    }
    const double arc = dt * std::sqrt(1.0 + du.squaredNorm());
    if (!ok || (v - pred).norm() > cfg.max_correction_ratio * arc ||
        (t_new < 1.0 && leaves_orthant(v.head(n), v[n]))) {
      step *= cfg.step_shrink;
      continue;
    }
    check_escape(v.head(n), v[n], radius);
    u = v;
    t = t_new;
    lin = std::move(cl);
    if (t < 1.0) {
      du = velocity(lin, t);
    } else {
      DenseLU lu(lin.state_jacobian);
      if (lu.nonsingular()) du = lu.solve(-lin.t_jacobian);
    }
    push(du, lin.residual.norm());
    ++trace.steps;
    if (iterations <= 3) step = std::min(step * cfg.step_grow, cfg.max_step);
  }

  TargetNewton end;
  end.x = u.head(n);
  end.lambda = u[n];
  end.lin = lin;
  end.residual = lin.residual.norm();
  result.pair = to_pair(problem, end);
  trace.evaluations = counter.evaluations;
  return result;
}

}  // namespace teneig
