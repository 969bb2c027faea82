#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adelix/errors.hpp"

namespace adelix {

// Dense row-major matrix over any value type with ring operations.
// The zero element is carried explicitly because scalar types know their
// ring only at run time.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& zero) : rows_(rows), cols_(cols), zero_(zero), a_(rows * cols, zero) {}

  static Matrix identity(int n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d, const T& zero) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), zero);
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const T& zero() const { return zero_; }
  T& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
    Matrix c(rows_, b.cols_, zero_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        for (int j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + x * b(k, j);
      }
    return c;
  }
  Matrix operator+(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("matrix shape mismatch in sum");
    Matrix c = *this;
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + b.a_[i];
    return c;
  }
  Matrix operator-(const Matrix& b) const {
    Matrix c = *this;
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
    return c;
  }
  bool operator==(const Matrix& b) const { return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_; }
  bool operator!=(const Matrix& b) const { return !(*this == b); }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix minor_matrix(int r, int c) const {
    Matrix m(rows_ - 1, cols_ - 1, zero_);
    for (int i = 0, ii = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (int j = 0, jj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m(ii, jj++) = (*this)(i, j);
      }
      ++ii;
    }
    return m;
  }

  // Cofactor expansion; exact over any commutative ring. Intended for the
  // small ranks where Laurent-polynomial entries make elimination awkward.
  T det_expand() const {
    if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
    if (rows_ == 0) throw DomainError("empty determinant needs a unit");
    if (rows_ == 1) return a_[0];
    if (rows_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    T acc = zero_;
    for (int j = 0; j < cols_; ++j) {
      T term = (*this)(0, j) * minor_matrix(0, j).det_expand();
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  // Adjugate: adj(M) M = M adj(M) = det(M) I.
  Matrix adjugate(const T& one) const {
    int n = rows_;
    Matrix adj(n, n, zero_);
    if (n == 1) {
      adj(0, 0) = one;
      return adj;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T c = minor_matrix(i, j).det_expand();
        adj(j, i) = ((i + j) % 2 == 0) ? c : zero_ - c;
      }
    return adj;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    Matrix<U> m(rows_, cols_, f(zero_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  Matrix row_block(int r0, int r1) const {
    Matrix m(r1 - r0, cols_, zero_);
    for (int i = r0; i < r1; ++i)
      for (int j = 0; j < cols_; ++j) m(i - r0, j) = (*this)(i, j);
    return m;
  }
  std::vector<T> row(int i) const { return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  void set_row(int i, const std::vector<T>& v) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void swap_rows(int i, int k) {
    for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  std::string str(const std::function<std::string(const T&)>& f) const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + f((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  int rows_ = 0, cols_ = 0;
  T zero_{};
  std::vector<T> a_;
};

}  // namespace adelix
