#pragma once

#include <cstddef>
#include <vector>

#include "lyutab/complex.hpp"
#include "lyutab/matrix.hpp"

namespace lyutab {

/// Homology at one spot of a complex  A --incoming--> B --outgoing--> C.
template <class K>
struct HomologyTerm {
  std::size_t dim = 0;
  /// dim B x dim: columns are cycles whose classes form a basis of homology.
  Matrix<K> representatives;
  /// dim x dim B: coordinates of the class of a cycle. Kills boundaries, and
  /// projection * representatives = identity. Meaningless on non-cycles.
  Matrix<K> projection;
};

/// One HomologyTerm per degree of a chain complex.
template <class K>
using HomologyData = std::vector<HomologyTerm<K>>;

/// Bounded chain complex of finite-dimensional spaces; differentials[t] maps term t to
/// term t-1 (differentials[0] is the 0 x dims[0] zero map).
template <class K>
struct ChainComplexVS {
  std::vector<std::size_t> dims;
  std::vector<Matrix<K>> differentials;
};

/// Representatives are kernel basis vectors (free-column normal form) that stay independent
/// modulo boundaries; the projection reads kernel coordinates and reduces them against the
/// echelon form of the boundaries.
template <class K>
HomologyTerm<K> homology_at(const K& field, const Matrix<K>& incoming, const Matrix<K>& outgoing,
                            std::size_t ambient) {
  if (incoming.rows() != ambient || outgoing.cols() != ambient) {
    throw InvariantError("homology_at: shape mismatch");
  }
  const RankKernel<K> cycles = rank_kernel(field, outgoing);
  const std::size_t z = cycles.free_columns.size();

  // Boundaries in cycle coordinates, one boundary per row.
  Matrix<K> boundary_rows(incoming.cols(), z);
  for (std::size_t col = 0; col < incoming.cols(); ++col) {
    for (std::size_t k = 0; k < z; ++k) boundary_rows(col, k) = incoming(cycles.free_columns[k], col);
  }
  const Echelon<K> b = row_reduce(field, std::move(boundary_rows));

  std::vector<char> is_pivot(z, 0);
  for (auto p : b.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> survivors;
  std::vector<std::size_t> position(z, 0);
  for (std::size_t k = 0; k < z; ++k) {
    if (!is_pivot[k]) {
      position[k] = survivors.size();
      survivors.push_back(k);
    }
  }

  HomologyTerm<K> out;
  out.dim = survivors.size();
  out.representatives = Matrix<K>(ambient, out.dim);
  for (std::size_t h = 0; h < out.dim; ++h) {
    for (std::size_t a = 0; a < ambient; ++a) out.representatives(a, h) = cycles.kernel(a, survivors[h]);
  }
  out.projection = Matrix<K>(out.dim, ambient);
  for (std::size_t h = 0; h < out.dim; ++h) out.projection(h, cycles.free_columns[survivors[h]]) = K::one();
  for (std::size_t r = 0; r < b.pivots.size(); ++r) {
    const std::size_t ambient_col = cycles.free_columns[b.pivots[r]];
    for (std::size_t h = 0; h < out.dim; ++h) {
      out.projection(h, ambient_col) = field.neg(b.reduced(r, survivors[h]));
    }
  }
  return out;
}

template <class K>
HomologyData<K> homology_with_projection(const K& field, const ChainComplexVS<K>& complex) {
  const std::size_t len = complex.dims.size();
  if (complex.differentials.size() != len) throw InvariantError("chain complex: one differential per term");
  for (std::size_t t = 1; t < len; ++t) {
    const auto& d = complex.differentials[t];
    if (d.rows() != complex.dims[t - 1] || d.cols() != complex.dims[t]) {
      throw InvariantError("chain complex: differential shape mismatch");
    }
    if (t + 1 < len && !is_zero(multiply(field, d, complex.differentials[t + 1]))) {
      throw InvariantError("chain complex: d^2 != 0 at degree " + std::to_string(t));
    }
  }
  HomologyData<K> out;
  for (std::size_t t = 0; t < len; ++t) {
    const Matrix<K> incoming = t + 1 < len ? complex.differentials[t + 1] : Matrix<K>(complex.dims[t], 0);
    const Matrix<K> outgoing = t > 0 ? complex.differentials[t] : Matrix<K>(0, complex.dims[0]);
    out.push_back(homology_at(field, incoming, outgoing, complex.dims[t]));
  }
  return out;
}

/// Dimensions of reduced homology H~_k(Δ; k) for k = -1 .. dim Δ (entry k+1).
/// Throws DomainError on the void complex.
std::vector<std::size_t> reduced_simplicial_homology(const SimplicialComplex& complex, const FieldSpec& field);

}  // namespace lyutab
