#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace teneig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Symmetry { general, semi_symmetric, symmetric };

const char* to_string(Symmetry s) noexcept;

/// Dense m-th order, n-dimensional real tensor.
///
/// Entries are stored row-major in the index tuple (i1, ..., im): i1 is the
/// slowest index and im the fastest, so the trailing n^(m-1) block starting
/// at i1 * n^(m-1) is the "row slice" of output component i1. Instances are
/// immutable once constructed.
class DenseTensor {
 public:
  /// Refuses tensors with more than this many entries.
  static constexpr std::uint64_t max_entries = std::uint64_t{1} << 31;

  DenseTensor(int order, int dim, std::vector<double> entries,
              Symmetry symmetry = Symmetry::general);

  static DenseTensor zeros(int order, int dim,
                           Symmetry symmetry = Symmetry::general);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// n^(m-1): number of entries in one row slice.
  std::size_t slice_size() const noexcept { return slice_; }
  Symmetry symmetry() const noexcept { return symmetry_; }

  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> slice(int i) const noexcept {
    return {entries_.data() + static_cast<std::size_t>(i) * slice_, slice_};
  }

  /// Linear offset of a 0-based index tuple.
  std::size_t offset(std::span<const int> index) const;
  double operator()(std::span<const int> index) const {
    return entries_[offset(index)];
  }
  double at(std::initializer_list<int> index) const;

  bool is_nonnegative() const noexcept;

  /// Same entries with a different symmetry flag (trusted metadata).
  DenseTensor with_symmetry(Symmetry s) const;

  bool operator==(const DenseTensor&) const = default;

 private:
  int order_;
  int dim_;
  std::size_t slice_;
  std::vector<double> entries_;
  Symmetry symmetry_;
};

/// Computes n^m with overflow detection; throws ErrorKind::input when the
/// result exceeds DenseTensor::max_entries.
std::size_t checked_entry_count(int order, int dim);

/// Advances a 0-based multi-index over [0, dim)^k in row-major order.
/// Returns false after the last tuple.
inline bool next_index(std::span<int> index, int dim) noexcept {
  for (std::size_t q = index.size(); q-- > 0;) {
    if (++index[q] < dim) return true;
    index[q] = 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Multilinear kernels. Rows of the output are independent, and the production
// versions split them across OpenMP threads; the serial literal-loop versions
// live in namespace reference.
// ---------------------------------------------------------------------------

/// y_i = sum_{i2..im} A_{i,i2..im} x_{i2} ... x_{im}.
Vector apply(const DenseTensor& a, const Vector& x);

/// Jacobian of x -> A x^{m-1}: sum over k = 2..m of the mode products that
/// leave index k free. Semi-symmetric and symmetric tensors take the
/// single-contraction path (m-1) * A x^{m-2}.
Matrix derivative(const DenseTensor& a, const Vector& x);

struct Linearized {
  Vector value;     ///< A x^{m-1}
  Matrix jacobian;  ///< derivative(A, x)
};

/// Both quantities from one pass over the tensor; the value is recovered
/// from the Euler identity J x = (m-1) A x^{m-1}.
Linearized apply_and_derivative(const DenseTensor& a, const Vector& x);

/// Semi-symmetric tensor with the same A x^{m-1} map: each row slice is
/// averaged over all permutations of the trailing m-1 indices.
DenseTensor semi_symmetrize(const DenseTensor& a);

/// (1-t) (x1'x)^{m-1} x1 + t A x^{m-1}, the value of the blended tensor
/// (1-t) x1 o ... o x1 + t A at x, without materializing it. Requires
/// t in [0, 1].
Vector rank1_apply_fast(const Vector& x1, const DenseTensor& a,
                        const Vector& x, double t);

/// Materializes x1 o ... o x1 (order m); test and fixture use only.
DenseTensor rank1_symmetric(const Vector& x1, int order);

/// Componentwise power. Fractional exponents need x >= 0; 0^l = 0.
Vector vec_power(const Vector& x, double exponent);

/// max_i sqrt(n) * sum_{i2..im} A_{i,i2..im}; bounds |lambda| for every
/// Z-eigenvalue of a nonnegative tensor.
double z_bound(const DenseTensor& a);

/// z_bound of x1 o ... o x1 without materializing it.
double z_bound_rank1(const Vector& x1, int order);

/// Samples random index permutations and checks the symmetry flag.
bool check_symmetry(const DenseTensor& a, int samples, std::uint64_t seed);

namespace reference {

// Serial literal summations kept as oracles for the production kernels.
Vector apply(const DenseTensor& a, const Vector& x);
Matrix derivative(const DenseTensor& a, const Vector& x);

}  // namespace reference

}  // namespace teneig
