#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "ncnls/band_matrix.hpp"
#include "ncnls/errors.hpp"

namespace ncnls {

/// Direct LU factorization of a BandMatrix.
///
/// The banded core is eliminated without pivoting, which keeps L and U inside
/// the band; this is stable for the matrices assembled here (their Hermitian
/// part is a positive multiple of the mass matrix). Fill in the border rows
/// and columns stays inside their dense storage. The remaining border x border
/// Schur complement is factorized densely with partial pivoting.
template <class T>
class BandLU {
 public:
  BandLU() = default;
  explicit BandLU(BandMatrix<T> a) : lu_(std::move(a)) { factorize(); }

  std::size_t size() const { return lu_.size(); }
  /// min |pivot| / max |pivot| of the core elimination, |z| = |Re z| + |Im z|.
  double pivot_ratio() const { return pivot_ratio_; }

  template <class V>
  std::vector<V> solve(std::span<const V> rhs) const {
    const std::size_t n = lu_.size();
    if (rhs.size() != n) throw ContractViolation("BandLU::solve: size mismatch");
    const std::size_t nc = lu_.core(), nb = lu_.border(), bw = lu_.half_bandwidth(),
                      w = lu_.width();
    const auto& band = lu_.band_data();
    const auto& right = lu_.right_data();
    const auto& bottom = lu_.bottom_data();

    std::vector<V> y(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < nc; ++k) {
      const V yk = y[k];
      const std::size_t hi = std::min(nc - 1, k + bw);
      for (std::size_t i = k + 1; i <= hi; ++i) y[i] -= band[i * w + (k + bw - i)] * yk;
      for (std::size_t r = 0; r < nb; ++r) y[nc + r] -= bottom[r * n + k] * yk;
    }
    // dense Schur block, row-permuted
    if (nb > 0) {
      std::vector<V> z(nb);
      for (std::size_t r = 0; r < nb; ++r) z[r] = y[nc + perm_[r]];
      for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < r; ++c) z[r] -= schur_[r * nb + c] * z[c];
      for (std::size_t r = nb; r-- > 0;) {
        for (std::size_t c = r + 1; c < nb; ++c) z[r] -= schur_[r * nb + c] * z[c];
        z[r] /= schur_[r * nb + r];
      }
      for (std::size_t r = 0; r < nb; ++r) y[nc + r] = z[r];
    }
    for (std::size_t i = nc; i-- > 0;) {
      V acc = y[i];
      const std::size_t hi = std::min(nc - 1, i + bw);
      const T* row = &band[i * w];
      for (std::size_t j = i + 1; j <= hi; ++j) acc -= row[j + bw - i] * y[j];
      for (std::size_t c = 0; c < nb; ++c) acc -= right[i * nb + c] * y[nc + c];
      y[i] = acc * inv_pivot_[i];
    }
    return y;
  }

  template <class V>
  std::vector<V> solve(const std::vector<V>& rhs) const {
    return solve(std::span<const V>(rhs));
  }

 private:
  // Border fill decays geometrically along the core; left alone it reaches the
  // subnormal range, where arithmetic is orders of magnitude slower.
  static void flush(T& v) {
    if (magnitude(v) < 1e-250) v = T{};
  }
  static double magnitude(double v) { return std::abs(v); }
  static double magnitude(const complex& v) { return std::abs(v.real()) + std::abs(v.imag()); }

  void factorize() {
    const std::size_t n = lu_.size();
    const std::size_t nc = lu_.core(), nb = lu_.border(), bw = lu_.half_bandwidth(),
                      w = lu_.width();
    auto& band = lu_.band_data();
    auto& right = lu_.right_data();
    auto& bottom = lu_.bottom_data();

    double scale = 0.0;
    for (const auto& v : band) scale = std::max(scale, magnitude(v));
    for (const auto& v : right) scale = std::max(scale, magnitude(v));
    for (const auto& v : bottom) scale = std::max(scale, magnitude(v));
    if (scale == 0.0 && n > 0) throw SolverError("BandLU: zero matrix");
    const double tiny = scale * 1e-13;

    inv_pivot_.assign(nc, T{});
    double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
      const T pivot = band[k * w + bw];
      const double ap = magnitude(pivot);
      if (!(ap > tiny)) {
        std::ostringstream msg;
        msg << "BandLU: singular or ill-conditioned matrix, pivot " << k << " has |u_kk| = " << ap
            << " (matrix scale " << scale << ")";
        throw SolverError(msg.str());
      }
      pmin = std::min(pmin, ap);
      pmax = std::max(pmax, ap);
      const T inv = T(1) / pivot;
      inv_pivot_[k] = inv;
      const std::size_t hi = std::min(nc - 1, k + bw);
      const T* prow = &band[k * w];
      for (std::size_t i = k + 1; i <= hi; ++i) {
        T* row = &band[i * w];
        const T l = row[k + bw - i] * inv;
        row[k + bw - i] = l;
        for (std::size_t j = k + 1; j <= hi; ++j) row[j + bw - i] -= l * prow[j + bw - k];
        for (std::size_t c = 0; c < nb; ++c) flush(right[i * nb + c] -= l * right[k * nb + c]);
      }
      for (std::size_t r = 0; r < nb; ++r) {
        T* brow = &bottom[r * n];
        const T l = brow[k] * inv;
        brow[k] = l;
        if (l == T{}) continue;
        for (std::size_t j = k + 1; j <= hi; ++j) flush(brow[j] -= l * prow[j + bw - k]);
        for (std::size_t c = 0; c < nb; ++c) brow[nc + c] -= l * right[k * nb + c];
      }
    }
    pivot_ratio_ = nc > 0 ? pmin / pmax : 1.0;

    // Schur complement lives in bottom[:, nc:]; factorize with partial pivoting.
    schur_.assign(nb * nb, T{});
    perm_.resize(nb);
    for (std::size_t r = 0; r < nb; ++r) {
      perm_[r] = r;
      for (std::size_t c = 0; c < nb; ++c) schur_[r * nb + c] = bottom[r * n + nc + c];
    }
    for (std::size_t k = 0; k < nb; ++k) {
      std::size_t p = k;
      for (std::size_t r = k + 1; r < nb; ++r)
        if (magnitude(schur_[r * nb + k]) > magnitude(schur_[p * nb + k])) p = r;
      if (!(magnitude(schur_[p * nb + k]) > tiny))
        throw SolverError("BandLU: singular border block");
      if (p != k) {
        for (std::size_t c = 0; c < nb; ++c) std::swap(schur_[k * nb + c], schur_[p * nb + c]);
        std::swap(perm_[k], perm_[p]);
      }
      for (std::size_t r = k + 1; r < nb; ++r) {
        const T l = schur_[r * nb + k] / schur_[k * nb + k];
        schur_[r * nb + k] = l;
        for (std::size_t c = k + 1; c < nb; ++c) schur_[r * nb + c] -= l * schur_[k * nb + c];
      }
    }
  }

  BandMatrix<T> lu_;
  std::vector<T> inv_pivot_;
  std::vector<T> schur_;
  std::vector<std::size_t> perm_;
  double pivot_ratio_ = 1.0;
};

/// Factorize-and-solve convenience; A must be nonsingular.
std::vector<complex> solve_complex_system(const SparseComplexMatrix& a, std::span<const complex> rhs);

}  // namespace ncnls
