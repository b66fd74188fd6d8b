#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wedgekit/errors.hpp"
#include "wedgekit/field.hpp"

namespace wedgekit {

/// Dense matrix over an exact field, representing a linear map between
/// numbered coordinate spaces. Columns are images of source basis vectors,
/// so a map V -> W with dim V = c, dim W = r is an r x c matrix.
///
/// Values are immutable in spirit: every operation returns a fresh matrix.
/// Matrices with zero rows or columns are legal and show up constantly
/// (quotients by the full space, the zeroth wedge power), so no code here
/// may assume rows * cols > 0.
template <class K>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, FieldSpec field)
      : rows_(rows),
        cols_(cols),
        field_(field),
        a_(rows * cols, FieldTraits<K>::zero(field)) {}

  static Matrix identity(std::size_t n, FieldSpec field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldTraits<K>::one(field);
    return m;
  }

  /// Row-major integer entries; test and fixture convenience.
  static Matrix from_ints(std::initializer_list<std::initializer_list<long long>> rows,
                          FieldSpec field) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c, field);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ragged row list");
      std::size_t j = 0;
      for (long long v : row) m.at(i, j++) = FieldTraits<K>::from_int(field, v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldSpec field() const { return field_; }

  K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const K& x : a_) {
      if (!FieldTraits<K>::is_zero(x)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    }
    return t;
  }

  Matrix column(std::size_t j) const {
    Matrix c(rows_, 1, field_);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
           a.a_ == b.a_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
    return c;
  }

  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix c = a;
    for (K& x : c.a_) x *= s;
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw FieldError("matrix product over mixed fields");
    if (a.cols_ != b.rows_) {
      throw DimensionError("matrix product shape mismatch: " + a.shape_str() +
                           " * " + b.shape_str());
    }
    Matrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a.at(i, k);
        if (FieldTraits<K>::is_zero(aik)) continue;  // structure matrices are sparse
        for (std::size_t j = 0; j < b.cols_; ++j) {
          c.at(i, j) += aik * b.at(k, j);
        }
      }
    }
    return c;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_shape(const Matrix& o) const {
    if (field_ != o.field_) throw FieldError("matrix arithmetic over mixed fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError("shape mismatch: " + shape_str() + " vs " +
                           o.shape_str());
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  FieldSpec field_;
  std::vector<K> a_;  // row-major
};

/// Kronecker product in the flat lexicographic tensor basis
/// e_i (x) e_j  |->  e_{i * dim2 + j}, fixed globally for all tensor powers.
template <class K>
Matrix<K> kronecker(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.field() != b.field()) throw FieldError("kronecker over mixed fields");
  Matrix<K> c(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const K& v = a.at(i1, j1);
      if (FieldTraits<K>::is_zero(v)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
          c.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = v * b.at(i2, j2);
        }
      }
    }
  }
  return c;
}

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) {
    throw DimensionError("hstack shape mismatch");
  }
  Matrix<K> c(a.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

template <class K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
  std::size_t rank;
};

/// Reduced row-echelon form by exact Gauss-Jordan elimination.
/// Deterministic: the pivot is the first nonzero entry in each column.
template <class K>
RrefResult<K> rref(const Matrix<K>& m) {
  Matrix<K> r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && FieldTraits<K>::is_zero(r.at(piv, col))) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(row, j), r.at(piv, j));
    }
    K inv = FieldTraits<K>::one(r.field()) / r.at(row, col);
    for (std::size_t j = 0; j < r.cols(); ++j) r.at(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || FieldTraits<K>::is_zero(r.at(i, col))) continue;
      K factor = r.at(i, col);
      for (std::size_t j = 0; j < r.cols(); ++j) {
        r.at(i, j) -= factor * r.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult<K>{std::move(r), std::move(pivots), row};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

template <class K>
K trace(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace of a non-square matrix");
  K t = FieldTraits<K>::zero(m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

/// Exact solution X of A X = B, or nullopt when the system is inconsistent.
/// Free variables are set to zero; the solution is unique iff A has full
/// column rank.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row mismatch");
  RrefResult<K> r = rref(hstack(a, b));
  // Any pivot landing in the right block marks an inconsistent row.
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] >= a.cols()) return std::nullopt;
  }
  Matrix<K> x(a.cols(), b.cols(), a.field());
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      x.at(r.pivots[k], j) = r.reduced.at(k, a.cols() + j);
    }
  }
  return x;
}

template <class K>
std::string to_string(const Matrix<K>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << FieldTraits<K>::str(m.at(i, j)) << (j + 1 < m.cols() ? " " : "");
    }
    os << "]" << (i + 1 < m.rows() ? "\n" : "");
  }
  os << "]";
  return os.str();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Matrix<K>& m) {
  return os << to_string(m);
}

}  // namespace wedgekit
