#include "cfr/gaussint.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cassert>

namespace cfr {

void GaussianIntMatrix::append_row(std::span<const GaussInt> row) {
  assert(static_cast<int>(row.size()) == cols_);
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

namespace {

using Big = boost::multiprecision::cpp_int;

// Arbitrary-precision Gaussian integer; intermediate Bareiss entries are
// minors of the input and can exceed 64 bits.
struct BigGauss {
  Big re, im;

  bool is_zero() const { return re == 0 && im == 0; }
};

BigGauss mul(const BigGauss& a, const BigGauss& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigGauss sub(const BigGauss& a, const BigGauss& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient a/b; Bareiss guarantees divisibility in Z[i].
BigGauss div_exact(const BigGauss& a, const BigGauss& b) {
  Big n = b.re * b.re + b.im * b.im;
  Big re = a.re * b.re + a.im * b.im;
  Big im = a.im * b.re - a.re * b.im;
  return {re / n, im / n};
}

int rank_fraction_free(std::vector<BigGauss>& a, int rows, int cols) {
  auto at = [&](int r, int c) -> BigGauss& { return a[static_cast<std::size_t>(r) * cols + c]; };
  int r = 0;
  BigGauss prev{1, 0};
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (!at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
    }
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        BigGauss num = sub(mul(at(i, j), at(r, c)), mul(at(i, c), at(r, j)));
        at(i, j) = div_exact(num, prev);
      }
      at(i, c) = BigGauss{0, 0};
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

std::vector<BigGauss> to_big(const GaussianIntMatrix& m, std::span<const GaussInt> extra) {
  std::vector<BigGauss> a;
  a.reserve(static_cast<std::size_t>(m.rows() + 1) * m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a.push_back({Big(m.at(i, j).re), Big(m.at(i, j).im)});
  }
  for (const GaussInt& g : extra) a.push_back({Big(g.re), Big(g.im)});
  return a;
}

}  // namespace

int exact_rank(const GaussianIntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = to_big(m, {});
  return rank_fraction_free(a, m.rows(), m.cols());
}

int exact_rank_with_row(const GaussianIntMatrix& m, std::span<const GaussInt> row) {
  assert(static_cast<int>(row.size()) == m.cols() || m.rows() == 0);
  int cols = m.rows() == 0 ? static_cast<int>(row.size()) : m.cols();
  auto a = to_big(m, row);
  return rank_fraction_free(a, m.rows() + 1, cols);
}

}  // namespace cfr
