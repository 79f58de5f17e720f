#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lyutab/subset.hpp"

namespace lyutab {

/// A simplicial complex on vertices {1..n}, stored by its facets.
///
/// The void complex (no faces at all) and the empty complex {∅} are distinct:
/// the first has no facets, the second has the single facet ∅.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Any generating family of faces; reduced to its maximal elements.
  SimplicialComplex(int n, std::vector<Subset> generators);

  static SimplicialComplex void_complex(int n) { return SimplicialComplex(n, {}); }
  static SimplicialComplex empty_complex(int n) { return SimplicialComplex(n, {Subset{0}}); }
  static SimplicialComplex simplex(int n) { return SimplicialComplex(n, {full_set(n)}); }

  int vertex_count() const { return n_; }
  const std::vector<Subset>& facets() const { return facets_; }

  bool is_void() const { return facets_.empty(); }
  bool contains(Subset face) const;
  /// Largest facet cardinality minus one; -1 for {∅}. Throws DomainError on the void complex.
  int dimension() const;
  bool is_pure() const;

  /// All faces in canonical order.
  std::vector<Subset> faces() const;
  std::vector<Subset> faces_of_dimension(int dim) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  int n_ = 0;
  std::vector<Subset> facets_;
};

/// A squarefree monomial ideal in k[x_1..x_n], stored by the supports of its minimal generators.
/// The unit ideal cannot be represented; the zero ideal has no generators.
class SquarefreeIdeal {
 public:
  SquarefreeIdeal() = default;
  /// Any generating family; reduced to minimal supports. Throws DomainError on an empty support.
  SquarefreeIdeal(int n, std::vector<Subset> generators);

  static SquarefreeIdeal zero(int n) { return SquarefreeIdeal(n, {}); }
  static SquarefreeIdeal irrelevant(int n);

  int vertex_count() const { return n_; }
  const std::vector<Subset>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }
  /// True iff x^support lies in the ideal.
  bool contains_monomial(Subset support) const;

  friend bool operator==(const SquarefreeIdeal&, const SquarefreeIdeal&) = default;

 private:
  int n_ = 0;
  std::vector<Subset> generators_;
};

struct ParsedInput {
  SquarefreeIdeal ideal;
  SimplicialComplex complex;
};

/// Reads {"n": .., "generators" | "facets" | "primary_components": [[..], ..]}.
ParsedInput parse_and_canonicalize(std::string_view json_text);

/// {"n":..,"generators":[..]} with canonically ordered supports; re-parses to itself.
std::string canonical_json(const SquarefreeIdeal& ideal);
std::string canonical_json(const SimplicialComplex& complex);

/// Stanley-Reisner dictionary: faces are the supports of monomials outside the ideal.
SimplicialComplex stanley_reisner_complex(const SquarefreeIdeal& ideal);
SquarefreeIdeal stanley_reisner_ideal(const SimplicialComplex& complex);
inline SimplicialComplex sr_dual_pair(const SquarefreeIdeal& ideal) { return stanley_reisner_complex(ideal); }
inline SquarefreeIdeal sr_dual_pair(const SimplicialComplex& complex) { return stanley_reisner_ideal(complex); }

/// Generated by x^P for the supports P of the minimal primes of the ideal.
SquarefreeIdeal alexander_dual(const SquarefreeIdeal& ideal);

/// Supports of the minimal primes, i.e. complements of the facets, canonically ordered.
std::vector<Subset> primary_decomposition(const SquarefreeIdeal& ideal);

/// Intersection of the monomial primes with the given supports.
SquarefreeIdeal intersect_primes(int n, const std::vector<Subset>& prime_supports);

SimplicialComplex link(const SimplicialComplex& complex, Subset face);

/// Subcomplex generated by all faces of dimension exactly `dim` (-1 <= dim <= dim Δ).
SimplicialComplex pure_skeleton(const SimplicialComplex& complex, int dim);

/// Number of connected components of the graph on maximal-dimension facets, joined when
/// they share a codimension-one face.
int hochster_huneke_components(const SimplicialComplex& complex);

/// Applies a permutation of {1..n}; perm[v-1] is the image of vertex v.
Subset permute(Subset s, const std::vector<int>& perm);
SimplicialComplex relabel(const SimplicialComplex& complex, const std::vector<int>& perm);
SquarefreeIdeal relabel(const SquarefreeIdeal& ideal, const std::vector<int>& perm);

}  // namespace lyutab
