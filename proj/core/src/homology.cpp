#include "lyutab/homology.hpp"

#include <algorithm>
#include <unordered_map>

namespace lyutab {

namespace {

template <class K>
std::vector<std::size_t> reduced_homology_over(const K& field, const SimplicialComplex& complex) {
  const int top = complex.dimension();
  // faces_by_size[s] lists the faces with s vertices.
  std::vector<std::vector<Subset>> faces_by_size(top + 2);
  for (Subset f : complex.faces()) faces_by_size[cardinality(f)].push_back(f);

  // ranks[s] = rank of the boundary from faces of size s to faces of size s-1.
  std::vector<std::size_t> ranks(top + 3, 0);
  for (int s = 1; s <= top + 1; ++s) {
    const auto& lower = faces_by_size[s - 1];
    std::unordered_map<Subset, std::size_t> index;
    for (std::size_t k = 0; k < lower.size(); ++k) index.emplace(lower[k], k);
    const auto& upper = faces_by_size[s];
    Matrix<K> boundary(lower.size(), upper.size());
    for (std::size_t col = 0; col < upper.size(); ++col) {
      int position = 0;
      for (int v : to_vertices(upper[col])) {
        const Subset facet = upper[col] & ~vertex_bit(v);
        boundary(index.at(facet), col) = (position % 2 == 0) ? K::one() : field.neg(K::one());
        ++position;
      }
    }
    ranks[s] = rank(field, boundary);
  }

  std::vector<std::size_t> out;
  for (int s = 0; s <= top + 1; ++s) {
    out.push_back(faces_by_size[s].size() - ranks[s] - ranks[s + 1]);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> reduced_simplicial_homology(const SimplicialComplex& complex, const FieldSpec& field) {
  if (complex.is_void()) throw DomainError("reduced homology of the void complex is undefined here");
  return with_field(field, [&](const auto& k) { return reduced_homology_over(k, complex); });
}

}  // namespace lyutab
