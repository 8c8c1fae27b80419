#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace cfr {

/// A Gaussian integer (element of Z + iZ).
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

inline std::complex<double> to_complex(GaussInt g) {
  return {static_cast<double>(g.re), static_cast<double>(g.im)};
}

inline double norm_sq(GaussInt g) {
  return static_cast<double>(g.re) * g.re + static_cast<double>(g.im) * g.im;
}

/// Row-major matrix of Gaussian integers.  Holds equation logs and coefficient
/// matrices; entry magnitudes stay well below 2^20.
class GaussianIntMatrix {
 public:
  GaussianIntMatrix() = default;
  GaussianIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static GaussianIntMatrix empty(int cols) { return GaussianIntMatrix(0, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussInt& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const GaussInt& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<const GaussInt> row(int r) const {
    return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }

  void append_row(std::span<const GaussInt> row);

  friend bool operator==(const GaussianIntMatrix&, const GaussianIntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussInt> a_;
};

/// Rank over the Gaussian integers, computed by fraction-free elimination.
/// Exact: no floating tolerance is involved anywhere.
int exact_rank(const GaussianIntMatrix& m);

/// Rank of m with one extra row appended (m itself is not modified).
int exact_rank_with_row(const GaussianIntMatrix& m, std::span<const GaussInt> row);

}  // namespace cfr
