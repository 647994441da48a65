#pragma once

// Dense row-major matrices over the exact element types of the library, plus
// the two elimination routines everything else is built on: congruence
// diagonalization of (skew-)hermitian Gram matrices and left-division
// inversion over an associative division ring.
//
// Element types provide: +, -, *, unary -, is_zero(), inverse(), zero(),
// one(). There is no global zero, so every matrix is created from a fill
// value that fixes the owning field or division ring.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hsig {

// Invertibility of a single entry. Division rings only need the zero test;
// element types of possibly split algebras provide their own overload.
template <class T>
bool is_unit(const T& x) {
  return !x.is_zero();
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  static Matrix diagonal(std::span<const T> entries, const T& zero) {
    Matrix m(entries.size(), entries.size(), zero);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  // Row-major data of the given shape.
  static Matrix from_data(std::size_t rows, std::size_t cols, std::vector<T> data) {
    if (data.size() != rows * cols) fail(Errc::DimensionMismatch, "matrix data has the wrong length");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<std::invoke_result_t<F, const T&>>;
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>::from_data(rows_, cols_, std::move(out));
  }

  Matrix transpose() const {
    if (data_.empty()) return *this;
    Matrix out(cols_, rows_, data_.front());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc, data_.front());
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = out.data_[i] + b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = out.data_[i] - b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a) {
    return a.map([](const T& x) { return -x; });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
    if (a.cols_ == 0) fail(Errc::DimensionMismatch, "empty matrix product");
    const T zero = a.data_.front().zero();
    Matrix out(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(l, j);
          if (y.is_zero()) continue;
          out(i, j) = out(i, j) + x * y;
        }
      }
    }
    return out;
  }

  // Left scalar multiple s·A.
  friend Matrix operator*(const T& s, const Matrix& a) {
    return a.map([&](const T& x) { return s * x; });
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      fail(Errc::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  const T zero = a.empty() ? b(0, 0).zero() : a(0, 0).zero();
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

// Kronecker product with left factor entries acting by left multiplication.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols(), a(0, 0).zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return out;
}

// Gauss-Jordan inversion over an associative division ring. Every row
// operation is a left multiplication, so the right half ends as X⁻¹ even
// when the entries do not commute. Returns nullopt for singular input.
template <class T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& x) {
  if (!x.square()) fail(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = x.rows();
  if (n == 0) return x;
  const T zero = x(0, 0).zero();
  const T one = x(0, 0).one();
  Matrix<T> a = x;
  Matrix<T> inv = Matrix<T>::identity(n, zero, one);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !is_unit(a(piv, col))) ++piv;
    if (piv == n) {
      // Only zero divisors left in this column (split algebras): try to make
      // a unit pivot by adding a later row.
      bool fixed = false;
      for (std::size_t r = col + 1; r < n && !fixed; ++r) {
        if (a(r, col).is_zero() || !is_unit(a(col, col) + a(r, col))) continue;
        for (std::size_t c = 0; c < n; ++c) {
          a(col, c) = a(col, c) + a(r, c);
          inv(col, c) = inv(col, c) + inv(r, c);
        }
        fixed = true;
      }
      if (!fixed) return std::nullopt;
      piv = col;
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const T p = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      if (!a(col, c).is_zero()) a(col, c) = p * a(col, c);
      if (!inv(col, c).is_zero()) inv(col, c) = p * inv(col, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const T f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero()) a(r, c) = a(r, c) - f * a(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) = inv(r, c) - f * inv(col, c);
      }
    }
  }
  return inv;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& x, Errc on_singular = Errc::Singular) {
  auto inv = try_inverse(x);
  if (!inv) fail(on_singular, "matrix is singular");
  return *std::move(inv);
}

template <class T>
struct Diagonalization {
  std::vector<T> entries;
  // Columns are the new basis vectors: θᵗ(C)·G·C = diag(entries).
  std::optional<Matrix<T>> transform;
};

// Congruence diagonalization of an ε-hermitian Gram matrix G over a division
// ring with involution θ (θᵗ(G) = ε·G). Basis vectors are changed on the
// right: e_t ← e_t + e_s·c. Zero pivots are handled by swapping in the first
// later nonzero diagonal entry, otherwise by the substitution e_i ← e_i + e_j·c
// with c the first of `units` making the new diagonal entry nonzero. Zero rows
// give zero entries. Throws SkewSymmetricOverField when no unit works, which
// only happens for skew-symmetric forms over a field with the identity.
template <class T, class Invol>
Diagonalization<T> congruence_diagonalize(Matrix<T> g, Invol theta, int epsilon,
                                          std::span<const T> units, bool track_transform) {
  if (!g.square()) fail(Errc::DimensionMismatch, "Gram matrix is not square");
  const std::size_t n = g.rows();
  Diagonalization<T> out;
  if (n == 0) return out;
  const T zero = g(0, 0).zero();
  std::optional<Matrix<T>> c_mat;
  if (track_transform) c_mat = Matrix<T>::identity(n, zero, g(0, 0).one());

  auto swap_basis = [&](std::size_t i, std::size_t j) {
    for (std::size_t l = 0; l < n; ++l) std::swap(g(i, l), g(j, l));
    for (std::size_t l = 0; l < n; ++l) std::swap(g(l, i), g(l, j));
    if (c_mat)
      for (std::size_t l = 0; l < n; ++l) std::swap((*c_mat)(l, i), (*c_mat)(l, j));
  };
  // e_t ← e_t + e_s·c
  auto add_basis = [&](std::size_t t, std::size_t s, const T& c) {
    const T tc = theta(c);
    for (std::size_t l = 0; l < n; ++l)
      if (!g(s, l).is_zero()) g(t, l) = g(t, l) + tc * g(s, l);
    for (std::size_t l = 0; l < n; ++l)
      if (!g(l, s).is_zero()) g(l, t) = g(l, t) + g(l, s) * c;
    if (c_mat)
      for (std::size_t l = 0; l < n; ++l)
        if (!(*c_mat)(l, s).is_zero()) (*c_mat)(l, t) = (*c_mat)(l, t) + (*c_mat)(l, s) * c;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i).is_zero()) {
      std::size_t j = i + 1;
      while (j < n && g(j, j).is_zero()) ++j;
      if (j < n) {
        swap_basis(i, j);
      } else {
        j = i + 1;
        while (j < n && g(i, j).is_zero()) ++j;
        if (j == n) continue;  // zero row: degenerate direction
        bool done = false;
        for (const T& u : units) {
          const T x = g(i, j) * u;
          const T val = epsilon > 0 ? x + theta(x) : x - theta(x);
          if (!val.is_zero()) {
            add_basis(i, j, u);
            done = true;
            break;
          }
        }
        if (!done)
          fail(Errc::SkewSymmetricOverField,
               "no substitution yields a nonzero diagonal entry (skew-symmetric form over a field)");
      }
    }
    const T pivot_inv = g(i, i).inverse();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g(i, j).is_zero()) continue;
      const T c = pivot_inv * g(i, j);
      add_basis(j, i, -c);
    }
  }
  out.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.entries.push_back(g(i, i));
  out.transform = std::move(c_mat);
  return out;
}

}  // namespace hsig
