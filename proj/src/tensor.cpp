#include "teneig/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "teneig/error.hpp"

namespace teneig {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::singular_curve: return "singular curve";
    case ErrorKind::stalled: return "tracking stalled";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::budget: return "budget exhausted";
    case ErrorKind::refinement_failed: return "refinement failed";
    case ErrorKind::anomaly: return "anomaly";
  }
  return "unknown";
}

const char* to_string(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::general: return "general";
    case Symmetry::semi_symmetric: return "semisymmetric";
    case Symmetry::symmetric: return "symmetric";
  }
  return "general";
}

std::size_t checked_entry_count(int order, int dim) {
  if (order < 2) throw Error(ErrorKind::input, "tensor order must be >= 2");
  if (dim < 1) throw Error(ErrorKind::input, "tensor dimension must be >= 1");
  std::uint64_t count = 1;
  for (int k = 0; k < order; ++k) {
    count *= static_cast<std::uint64_t>(dim);
    if (count > DenseTensor::max_entries) {
      throw Error(ErrorKind::input,
                  "tensor with n^m > 2^31 entries is not supported (m=" +
                      std::to_string(order) + ", n=" + std::to_string(dim) +
                      ")");
    }
  }
  return static_cast<std::size_t>(count);
}

DenseTensor::DenseTensor(int order, int dim, std::vector<double> entries,
                         Symmetry symmetry)
    : order_(order),
      dim_(dim),
      slice_(0),
      entries_(std::move(entries)),
      symmetry_(symmetry) {
  const std::size_t count = checked_entry_count(order, dim);
  if (entries_.size() != count) {
    throw Error(ErrorKind::input, "entry count " +
                                      std::to_string(entries_.size()) +
                                      " does not match n^m = " +
                                      std::to_string(count));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::input, "tensor entries must be finite");
    }
  }
  slice_ = count / static_cast<std::size_t>(dim);
}

DenseTensor DenseTensor::zeros(int order, int dim, Symmetry symmetry) {
  return DenseTensor(order, dim,
                     std::vector<double>(checked_entry_count(order, dim), 0.0),
                     symmetry);
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) {
    throw Error(ErrorKind::input, "index tuple length does not match order");
  }
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw Error(ErrorKind::input, "index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double DenseTensor::at(std::initializer_list<int> index) const {
  return (*this)(std::span<const int>(index.begin(), index.size()));
}

bool DenseTensor::is_nonnegative() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double v) { return v >= 0.0; });
}

DenseTensor DenseTensor::with_symmetry(Symmetry s) const {
  DenseTensor copy = *this;
  copy.symmetry_ = s;
  return copy;
}

DenseTensor semi_symmetrize(const DenseTensor& a) {
  if (a.symmetry() != Symmetry::general) {
    return a.with_symmetry(a.symmetry());
  }
  const int m = a.order();
  const int n = a.dim();
  const std::size_t slice = a.slice_size();

  // Averaging over the (m-1)! permutations of a tail tuple equals averaging
  // over the distinct tuples sharing its multiset, since every distinct
  // arrangement is hit equally often. Group by the sorted tuple's offset.
  std::vector<std::size_t> canonical(slice);
  std::vector<int> tail(static_cast<std::size_t>(m - 1), 0);
  std::vector<int> sorted(tail.size());
  for (std::size_t off = 0; off < slice; ++off) {
    std::copy(tail.begin(), tail.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    std::size_t key = 0;
    for (int v : sorted) key = key * static_cast<std::size_t>(n) + v;
    canonical[off] = key;
    next_index(tail, n);
  }
  std::vector<int> counts(slice, 0);
  for (std::size_t off = 0; off < slice; ++off) ++counts[canonical[off]];

  std::vector<double> out(a.size());
  std::vector<double> sums(slice);
  for (int i = 0; i < n; ++i) {
    const auto row = a.slice(i);
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t off = 0; off < slice; ++off) {
      sums[canonical[off]] += row[off];
    }
    double* dst = out.data() + static_cast<std::size_t>(i) * slice;
    for (std::size_t off = 0; off < slice; ++off) {
      const std::size_t key = canonical[off];
      dst[off] = sums[key] / counts[key];
    }
  }
  return DenseTensor(m, n, std::move(out), Symmetry::semi_symmetric);
}

Vector rank1_apply_fast(const Vector& x1, const DenseTensor& a,
                        const Vector& x, double t) {
  if (x1.size() != a.dim() || x.size() != a.dim()) {
    throw Error(ErrorKind::input, "rank1_apply_fast: dimension mismatch");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::domain, "rank1_apply_fast: t must lie in [0, 1]");
  }
  const double c = std::pow(x1.dot(x), a.order() - 1);
  if (t == 1.0) return apply(a, x);
  if (t == 0.0) return c * x1;
  return (1.0 - t) * c * x1 + t * apply(a, x);
}

DenseTensor rank1_symmetric(const Vector& x1, int order) {
  const int n = static_cast<int>(x1.size());
  std::vector<double> entries(checked_entry_count(order, n));
  std::vector<int> index(static_cast<std::size_t>(order), 0);
  for (double& e : entries) {
    double p = 1.0;
    for (int i : index) p *= x1[i];
    e = p;
    next_index(index, n);
  }
  return DenseTensor(order, n, std::move(entries), Symmetry::symmetric);
}

Vector vec_power(const Vector& x, double exponent) {
  if (!(exponent > 0.0)) {
    throw Error(ErrorKind::domain, "vec_power: exponent must be positive");
  }
  const bool integral = std::floor(exponent) == exponent;
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x[i];
    if (!integral && v < 0.0) {
      throw Error(ErrorKind::domain,
                  "vec_power: negative component with fractional exponent");
    }
    out[i] = (v == 0.0) ? 0.0 : std::pow(v, exponent);
  }
  return out;
}

double z_bound(const DenseTensor& a) {
  double best = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const auto row = a.slice(i);
    best = std::max(best, std::accumulate(row.begin(), row.end(), 0.0));
  }
  return std::sqrt(static_cast<double>(a.dim())) * best;
}

double z_bound_rank1(const Vector& x1, int order) {
  // Row i of x1 o ... o x1 sums to x1_i * (sum_j x1_j)^(m-1).
  const double total = x1.sum();
  return std::sqrt(static_cast<double>(x1.size())) * x1.maxCoeff() *
         std::pow(total, order - 1);
}

bool check_symmetry(const DenseTensor& a, int samples, std::uint64_t seed) {
  if (a.symmetry() == Symmetry::general) return true;
  const int m = a.order();
  const int n = a.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> index(static_cast<std::size_t>(m));
  std::vector<int> permuted(index.size());
  const double scale = std::max(
      1.0, std::abs(*std::max_element(
               a.entries().begin(), a.entries().end(),
               [](double l, double r) { return std::abs(l) < std::abs(r); })));
  for (int s = 0; s < samples; ++s) {
    for (int& i : index) i = pick(rng);
    permuted = index;
    if (a.symmetry() == Symmetry::symmetric) {
      std::shuffle(permuted.begin(), permuted.end(), rng);
    } else {
      std::shuffle(permuted.begin() + 1, permuted.end(), rng);
    }
    if (std::abs(a(index) - a(permuted)) > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace teneig
