#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ncnls/errors.hpp"

namespace ncnls {

using complex = std::complex<double>;

/// Square matrix that is banded except for a few trailing "border" rows and
/// columns, which are stored densely.
///
/// Splitting the index range as [core | border] with core size nc = n - border:
///  - core x core entries live in a band of half-width `half_bandwidth`,
///  - core x border entries live in a dense nc x border block,
///  - border rows are stored densely over all n columns.
/// A periodic 1D finite-element operator with the seam node numbered last has
/// exactly this shape with border = 1.
template <class T>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, std::size_t half_bandwidth, std::size_t border)
      : n_(n), bw_(half_bandwidth), border_(border) {
    if (border > n) throw ContractViolation("BandMatrix: border larger than matrix");
    band_.assign(core() * width(), T{});
    right_.assign(core() * border_, T{});
    bottom_.assign(border_ * n_, T{});
  }

  std::size_t size() const { return n_; }
  std::size_t half_bandwidth() const { return bw_; }
  std::size_t border() const { return border_; }
  std::size_t core() const { return n_ - border_; }
  std::size_t width() const { return 2 * bw_ + 1; }

  bool in_pattern(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) return false;
    if (i >= core() || j >= core()) return true;
    return (i > j ? i - j : j - i) <= bw_;
  }

  T at(std::size_t i, std::size_t j) const {
    if (!in_pattern(i, j)) return T{};
    return const_cast<BandMatrix*>(this)->slot(i, j);
  }

  T& ref(std::size_t i, std::size_t j) {
    if (!in_pattern(i, j)) throw ContractViolation("BandMatrix: entry outside stored pattern");
    return slot(i, j);
  }

  void add(std::size_t i, std::size_t j, T value) { ref(i, j) += value; }

  /// y = A x. Rows are independent.
  template <class V>
  std::vector<V> apply(std::span<const V> x) const {
    if (x.size() != n_) throw ContractViolation("BandMatrix::apply: size mismatch");
    std::vector<V> y(n_, V{});
    const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(core());
    const std::ptrdiff_t bw = static_cast<std::ptrdiff_t>(bw_);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nc; ++i) {
      V acc{};
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - bw);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(nc - 1, i + bw);
      const T* row = &band_[static_cast<std::size_t>(i) * width()];
      for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += row[j - i + bw] * x[j];
      for (std::size_t c = 0; c < border_; ++c)
        acc += right_[static_cast<std::size_t>(i) * border_ + c] * x[core() + c];
      y[i] = acc;
    }
    for (std::size_t r = 0; r < border_; ++r) {
      V acc{};
      for (std::size_t j = 0; j < n_; ++j) acc += bottom_[r * n_ + j] * x[j];
      y[core() + r] = acc;
    }
    return y;
  }

  template <class V>
  std::vector<V> apply(const std::vector<V>& x) const {
    return apply(std::span<const V>(x));
  }

  bool same_shape(const BandMatrix& other) const {
    return n_ == other.n_ && bw_ == other.bw_ && border_ == other.border_;
  }

  BandMatrix& operator*=(T s) {
    for (auto& v : band_) v *= s;
    for (auto& v : right_) v *= s;
    for (auto& v : bottom_) v *= s;
    return *this;
  }

  /// Raw storage, for elimination and entrywise combinations.
  std::vector<T>& band_data() { return band_; }
  std::vector<T>& right_data() { return right_; }
  std::vector<T>& bottom_data() { return bottom_; }
  const std::vector<T>& band_data() const { return band_; }
  const std::vector<T>& right_data() const { return right_; }
  const std::vector<T>& bottom_data() const { return bottom_; }

 private:
  T& slot(std::size_t i, std::size_t j) {
    const std::size_t nc = core();
    if (i >= nc) return bottom_[(i - nc) * n_ + j];
    if (j >= nc) return right_[i * border_ + (j - nc)];
    return band_[i * width() + (j + bw_ - i)];
  }

  std::size_t n_ = 0, bw_ = 0, border_ = 0;
  std::vector<T> band_, right_, bottom_;
};

using RealBandMatrix = BandMatrix<double>;
using SparseComplexMatrix = BandMatrix<complex>;

struct MatrixTerm {
  complex coefficient;
  const RealBandMatrix& matrix;
};

/// sum_i c_i * A_i over real matrices sharing one pattern.
SparseComplexMatrix linear_combination(std::initializer_list<MatrixTerm> terms);

SparseComplexMatrix to_complex(const RealBandMatrix& a);

}  // namespace ncnls
