#include "teneig/homotopy.hpp"

#include <cmath>

#include "teneig/error.hpp"

namespace teneig {

const char* to_string(EigenKind kind) noexcept {
  return kind == EigenKind::Z ? "Z" : "H";
}

namespace {

Vector int_power(const Vector& x, int p) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double r = 1.0;
    for (int k = 0; k < p; ++k) r *= x[i];
    out[i] = r;
  }
  return out;
}

}  // namespace

HomotopyProblem::HomotopyProblem(std::shared_ptr<const DenseTensor> target,
                                 Vector generator, EigenKind kind)
    : target_(std::move(target)), generator_(std::move(generator)),
      kind_(kind) {
  if (!target_) throw Error(ErrorKind::input, "homotopy: null target tensor");
  if (!target_->is_nonnegative()) {
    throw Error(ErrorKind::input, "homotopy: target tensor must be >= 0");
  }
  if (generator_.size() != target_->dim()) {
    throw Error(ErrorKind::input, "homotopy: generator length mismatch");
  }
  if (!(generator_.array() > 0.0).all()) {
    throw Error(ErrorKind::domain,
                "homotopy: start generator must be componentwise positive");
  }
  if (target_->symmetry() == Symmetry::general) {
    target_ = std::make_shared<const DenseTensor>(semi_symmetrize(*target_));
  }
}

CurvePoint HomotopyProblem::start_eigenpair() const {
  const int m = order();
  CurvePoint p;
  p.t = 0.0;
  if (kind_ == EigenKind::Z) {
    const double norm = generator_.norm();
    p.x = generator_ / norm;
    p.lambda = std::pow(norm, m);
  } else {
    const Vector root = vec_power(generator_, 1.0 / (m - 1));
    p.lambda = std::pow(generator_.dot(root), m - 1);
    p.x = root / root.norm();
  }
  p.residual_norm = residual(p.x, p.lambda, 0.0).norm();
  return p;
}

Vector HomotopyProblem::residual(const Vector& x, double lambda,
                                 double t) const {
  const int n = dim();
  const int m = order();
  if (x.size() != n) throw Error(ErrorKind::input, "residual: length mismatch");
  Vector blend = std::pow(generator_.dot(x), m - 1) * (1.0 - t) * generator_;
  if (t != 0.0) blend += t * apply(*target_, x);
  Vector r(n + 1);
  if (kind_ == EigenKind::Z) {
    r.head(n) = blend - lambda * x;
  } else {
    r.head(n) = blend - lambda * int_power(x, m - 1);
  }
  r[n] = x.squaredNorm() - 1.0;
  return r;
}

HomotopyLinearization HomotopyProblem::linearize(const Vector& x,
                                                 double lambda,
                                                 double t) const {
  const int n = dim();
  const int m = order();
  if (x.size() != n) throw Error(ErrorKind::input, "linearize: length mismatch");
  const Linearized target = apply_and_derivative(*target_, x);
  const double c = generator_.dot(x);
  const double c_pow = std::pow(c, m - 1);

  HomotopyLinearization out;
  out.residual.resize(n + 1);
  out.state_jacobian.setZero(n + 1, n + 1);
  out.t_jacobian.resize(n + 1);

  const Vector blend = (1.0 - t) * c_pow * generator_ + t * target.value;
  auto block = out.state_jacobian.topLeftCorner(n, n);
  block = t * target.jacobian;
  block.noalias() += ((1.0 - t) * (m - 1) * std::pow(c, m - 2)) * generator_ *
                     generator_.transpose();

  if (kind_ == EigenKind::Z) {
    out.residual.head(n) = blend - lambda * x;
    block.diagonal().array() -= lambda;
    out.state_jacobian.topRightCorner(n, 1) = -x;
  } else {
    const Vector xm1 = int_power(x, m - 1);
    out.residual.head(n) = blend - lambda * xm1;
    block.diagonal() -= ((m - 1) * lambda) * int_power(x, m - 2);
    out.state_jacobian.topRightCorner(n, 1) = -xm1;
  }
  out.residual[n] = x.squaredNorm() - 1.0;
  out.state_jacobian.bottomLeftCorner(1, n) = 2.0 * x.transpose();

  out.t_jacobian.head(n) = target.value - c_pow * generator_;
  out.t_jacobian[n] = 0.0;
  return out;
}

Matrix HomotopyProblem::jacobian_wrt_state(const Vector& x, double lambda,
                                           double t) const {
  return linearize(x, lambda, t).state_jacobian;
}

Vector HomotopyProblem::jacobian_wrt_t(const Vector& x, double lambda,
                                       double t) const {
  return linearize(x, lambda, t).t_jacobian;
}

double HomotopyProblem::lambda_bound() const {
  return std::max(z_bound(*target_), z_bound_rank1(generator_, order()));
}

Vector random_generator(int dim, std::mt19937_64& rng, double norm_low,
                        double norm_high) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = unit(rng);
    if ((v.array() > 0.0).all()) break;
  }
  std::uniform_real_distribution<double> norm(norm_low, norm_high);
  return v * (norm(rng) / v.norm());
}

Vector uniform_h_generator(int dim, int order) {
  const double scale =
      std::pow(static_cast<double>(dim), -static_cast<double>(order - 1) / order);
  return Vector::Constant(dim, scale);
}

}  // namespace teneig
