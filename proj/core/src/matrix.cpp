#include "lyutab/matrix.hpp"

#include <utility>

namespace lyutab {

namespace {

template <class K>
void back_substitute(const K& field, Matrix<K>& m, const std::vector<std::size_t>& pivots) {
  const std::size_t cols = m.cols();
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const auto inv = field.div(K::one(), m(r, pivots[r]));
    for (std::size_t c = pivots[r]; c < cols; ++c) {
      if (!K::is_zero(m(r, c))) m(r, c) = field.mul(m(r, c), inv);
    }
  }
  for (std::size_t r = pivots.size(); r-- > 0;) {
    const std::size_t p = pivots[r];
    for (std::size_t s = 0; s < r; ++s) {
      if (K::is_zero(m(s, p))) continue;
      const auto factor = m(s, p);
      for (std::size_t c = p; c < cols; ++c) {
        if (!K::is_zero(m(r, c))) m(s, c) = field.sub(m(s, c), field.mul(factor, m(r, c)));
      }
    }
  }
}

}  // namespace

Echelon<RationalField> row_reduce(const RationalField& field, Matrix<RationalField> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  // Scale every row to integers.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(m(r, c)) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(m(r, c)) != 0) a[r][c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
    }
  }

  // Bareiss forward elimination; every stored entry stays an integer minor.
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  mpz_class t1;
  mpz_class t2;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t found = r;
    while (found < rows && sgn(a[found][c]) == 0) ++found;
    if (found == rows) continue;
    std::swap(a[r], a[found]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t1 = a[r][c] * a[i][j];
        t2 = a[i][c] * a[r][j];
        t1 -= t2;
        if (prev != 1) {
          if (!mpz_divisible_p(t1.get_mpz_t(), prev.get_mpz_t())) {
            throw InvariantError("fraction-free elimination produced an inexact quotient");
          }
          mpz_divexact(a[i][j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
        } else {
          a[i][j] = t1;
        }
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }

  Matrix<RationalField> reduced(rows, cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(a[i][c]) != 0) reduced(i, c) = mpq_class(a[i][c]);
    }
  }
  back_substitute(field, reduced, pivots);
  return {std::move(reduced), std::move(pivots)};
}

Echelon<PrimeField> row_reduce(const PrimeField& field, Matrix<PrimeField> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t found = r;
    while (found < rows && m(found, c) == 0) ++found;
    if (found == rows) continue;
    if (found != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(found, j));
    }
    const auto inv = field.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = field.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(r, j) != 0) m(i, j) = field.sub(m(i, j), field.mul(factor, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace lyutab
