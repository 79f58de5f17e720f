#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lyutab/errors.hpp"
#include "lyutab/field.hpp"

namespace lyutab {

/// Dense row-major matrix over the field K. A default-constructed element is zero in both
/// supported fields, so no field instance is needed to build one.
template <class K>
class Matrix {
 public:
  using Element = typename K::Element;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = K::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

template <class K>
bool is_zero(const Matrix<K>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!K::is_zero(m(r, c))) return false;
    }
  }
  return true;
}

template <class K>
Matrix<K> transpose(const Matrix<K>& m) {
  Matrix<K> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

template <class K>
Matrix<K> multiply(const K& field, const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) throw InvariantError("matrix product: shape mismatch");
  Matrix<K> out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(r, k);
      if (K::is_zero(x)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (!K::is_zero(b(k, c))) out(r, c) = field.add(out(r, c), field.mul(x, b(k, c)));
      }
    }
  }
  return out;
}

/// Reduced row echelon form plus pivot columns, one per nonzero row.
template <class K>
struct Echelon {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
};

/// Pivoting rule: leftmost column first, first nonzero row at or below the current one.
/// Over the rationals the forward pass is fraction-free (Bareiss on integer-scaled rows).
Echelon<RationalField> row_reduce(const RationalField& field, Matrix<RationalField> m);
Echelon<PrimeField> row_reduce(const PrimeField& field, Matrix<PrimeField> m);

template <class K>
struct RankKernel {
  std::size_t rank = 0;
  /// cols x nullity; column k is the unique kernel vector with a 1 in free column
  /// free_columns[k] and 0 in the other free columns. Reading a kernel element's entries at
  /// the free columns therefore gives its coordinates in this basis.
  Matrix<K> kernel;
  std::vector<std::size_t> free_columns;
};

template <class K>
RankKernel<K> rank_kernel(const K& field, const Matrix<K>& m) {
  RankKernel<K> out;
  const std::size_t cols = m.cols();
  Echelon<K> e = row_reduce(field, m);
  out.rank = e.pivots.size();
  std::vector<char> is_pivot(cols, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) out.free_columns.push_back(c);
  }
  out.kernel = Matrix<K>(cols, out.free_columns.size());
  for (std::size_t k = 0; k < out.free_columns.size(); ++k) {
    const std::size_t f = out.free_columns[k];
    out.kernel(f, k) = K::one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.kernel(e.pivots[r], k) = field.neg(e.reduced(r, f));
  }
  return out;
}

template <class K>
std::size_t rank(const K& field, const Matrix<K>& m) {
  return row_reduce(field, m).pivots.size();
}

/// Matrices as nested arrays of exact literals ("3", "-1/2", residues).
template <class K>
std::vector<std::vector<std::string>> to_literals(const Matrix<K>& m) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = K::to_string(m(r, c));
  }
  return out;
}

}  // namespace lyutab
