// Dense linear algebra over a prime field F_p, p < 256.
// Matrices are small (a few dozen rows at most) and stored row-major as bytes.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcurv13::fp {

using Scalar = std::uint8_t;

class Field {
 public:
  explicit Field(unsigned p) : p_(p), inv_(p, 0) {
    if (p < 2 || p > 255) throw std::invalid_argument("field characteristic must be a prime below 256");
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    for (unsigned a = 1; a < p; ++a)
      for (unsigned b = 1; b < p; ++b)
        if (a * b % p == 1) inv_[a] = static_cast<Scalar>(b);
  }

  unsigned p() const { return p_; }
  Scalar add(unsigned a, unsigned b) const { return static_cast<Scalar>((a + b) % p_); }
  Scalar sub(unsigned a, unsigned b) const { return static_cast<Scalar>((a + p_ - b) % p_); }
  Scalar mul(unsigned a, unsigned b) const { return static_cast<Scalar>(a * b % p_); }
  Scalar neg(unsigned a) const { return static_cast<Scalar>((p_ - a) % p_); }
  Scalar inv(unsigned a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero");
    return inv_[a % p_];
  }
  /// Reduce a signed integer into [0, p).
  Scalar from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }

 private:
  unsigned p_;
  std::vector<Scalar> inv_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Scalar at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar* row(std::size_t i) { return a_.data() + i * cols_; }
  const Scalar* row(std::size_t i) const { return a_.data() + i * cols_; }

  void append_row(const Scalar* r) {
    a_.insert(a_.end(), r, r + cols_);
    ++rows_;
  }
  void append_row(const std::vector<Scalar>& r) {
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    append_row(r.data());
  }
  std::vector<Scalar> row_vector(std::size_t i) const { return {row(i), row(i) + cols_}; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool is_zero() const {
    for (auto v : a_)
      if (v) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

/// In-place reduced row echelon form; zero rows are dropped. Returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Scalar s = f.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Scalar k = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(k, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix trimmed(0, m.cols());
  for (std::size_t i = 0; i < r; ++i) trimmed.append_row(m.row(i));
  m = std::move(trimmed);
  return pivots;
}

inline std::size_t rank(Matrix m, const Field& f) { return rref(m, f).size(); }

/// Basis of {u : M u = 0}, one vector per row. Free columns are taken in increasing
/// order; basis vector k has a 1 in the k-th free column and 0 in the other free ones.
inline Matrix nullspace(Matrix m, const Field& f) {
  const auto pivots = rref(m, f);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m.at(i, free));
    basis.append_row(v);
  }
  return basis;
}

struct AffineSolution {
  std::vector<Scalar> particular;
  Matrix directions;  // nullspace basis, one per row
};

/// All u with M u = b, or nullopt when inconsistent.
inline std::optional<AffineSolution> solve(const Matrix& m, const std::vector<Scalar>& b, const Field& f) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const auto pivots = rref(aug, f);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug.at(i, m.cols());
  sol.directions = nullspace(m, f);
  return sol;
}

inline Matrix multiply(const Matrix& a, const Matrix& b, const Field& f) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in multiply");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar x = a.at(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(k, j)));
    }
  return c;
}

/// Inverse of a square matrix; throws when singular.
inline Matrix inverse(const Matrix& m, const Field& f) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const auto pivots = rref(aug, f);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

}  // namespace pcurv13::fp
