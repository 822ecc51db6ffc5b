#pragma once

// Dense exact linear algebra over a field K (Q or Cyc).  Everything is
// fraction-honest Gauss-Jordan; sizes here are desk scale, so no pivoting
// strategy beyond "first nonzero".

#include <optional>
#include <vector>

#include "weylkit/scalars.hpp"

namespace weylkit::exact {

template <class K>
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols)
      : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols,
                               FieldOps<K>::zero()) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldOps<K>::one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  K& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const K& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * c_ + j];
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    WK_ASSERT(x.c_ == y.r_, "matrix product shape mismatch");
    Mat z(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        const K& v = x.at(i, k);
        if (FieldOps<K>::is_zero(v)) continue;
        for (int j = 0; j < y.c_; ++j) {
          if (FieldOps<K>::is_zero(y.at(k, j))) continue;
          z.at(i, j) += v * y.at(k, j);
        }
      }
    return z;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    WK_ASSERT(x.r_ == y.r_ && x.c_ == y.c_, "matrix sum shape mismatch");
    Mat z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    WK_ASSERT(x.r_ == y.r_ && x.c_ == y.c_, "matrix diff shape mismatch");
    Mat z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!FieldOps<K>::is_zero(x.a_[i] - y.a_[i])) return false;
    return true;
  }

  Mat operator*(const K& s) const {
    Mat z = *this;
    for (auto& v : z.a_) v *= s;
    return z;
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    WK_ASSERT(static_cast<int>(v.size()) == c_, "matrix apply shape mismatch");
    std::vector<K> out(static_cast<std::size_t>(r_), FieldOps<K>::zero());
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if (!FieldOps<K>::is_zero(at(i, j))) out[i] += at(i, j) * v[j];
    return out;
  }

  bool is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) {
        const K want = i == j ? FieldOps<K>::one() : FieldOps<K>::zero();
        if (!FieldOps<K>::is_zero(at(i, j) - want)) return false;
      }
    return true;
  }

  K trace() const {
    WK_ASSERT(r_ == c_, "trace of non-square matrix");
    K t = FieldOps<K>::zero();
    for (int i = 0; i < r_; ++i) t += at(i, i);
    return t;
  }

private:
  int r_ = 0, c_ = 0;
  std::vector<K> a_;
};

// In-place reduced row echelon form; returns pivot column indices.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!FieldOps<K>::is_zero(m.at(i, col))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    K inv = FieldOps<K>::inv(m.at(row, col));
    for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || FieldOps<K>::is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank_of(Mat<K> m) {
  return static_cast<int>(rref(m).size());
}

// Columns form a basis of the kernel {v : Mv = 0}.
template <class K>
Mat<K> kernel_basis(Mat<K> m) {
  int n = m.cols();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  int free_count = n - static_cast<int>(pivots.size());
  Mat<K> ker(n, free_count);
  int k = 0;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[static_cast<std::size_t>(col)]) continue;
    ker.at(col, k) = FieldOps<K>::one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      ker.at(pivots[pi], k) =
          FieldOps<K>::neg(m.at(static_cast<int>(pi), col));
    ++k;
  }
  return ker;
}

// Solves A x = b; nullopt when inconsistent.  Free coordinates are set to 0.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& a, const std::vector<K>& b) {
  WK_ASSERT(static_cast<int>(b.size()) == a.rows(), "solve shape mismatch");
  Mat<K> aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<K> x(static_cast<std::size_t>(a.cols()), FieldOps<K>::zero());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[static_cast<std::size_t>(pivots[pi])] = aug.at(static_cast<int>(pi), a.cols());
  return x;
}

// Solves A X = B columnwise; nullopt when any column is inconsistent.
template <class K>
std::optional<Mat<K>> solve_matrix(const Mat<K>& a, const Mat<K>& b) {
  WK_ASSERT(a.rows() == b.rows(), "solve_matrix shape mismatch");
  Mat<K> aug(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
  }
  std::vector<int> pivots = rref(aug);
  for (int p : pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat<K> x(a.cols(), b.cols());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.at(pivots[pi], j) = aug.at(static_cast<int>(pi), a.cols() + j);
  return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a) {
  WK_ASSERT(a.rows() == a.cols(), "inverse of non-square matrix");
  auto inv = solve_matrix(a, Mat<K>::identity(a.rows()));
  if (!inv) return std::nullopt;
  if (rank_of(a) != a.rows()) return std::nullopt;
  return inv;
}

template <class K>
K det(Mat<K> m) {
  WK_ASSERT(m.rows() == m.cols(), "det of non-square matrix");
  K d = FieldOps<K>::one();
  int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!FieldOps<K>::is_zero(m.at(i, col))) {
        p = i;
        break;
      }
    if (p < 0) return FieldOps<K>::zero();
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
      d = FieldOps<K>::neg(d);
    }
    d *= m.at(col, col);
    K inv = FieldOps<K>::inv(m.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      if (FieldOps<K>::is_zero(m.at(i, col))) continue;
      K f = m.at(i, col) * inv;
      for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

}  // namespace weylkit::exact
