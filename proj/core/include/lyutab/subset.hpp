#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace lyutab {

/// A subset of {1..n} stored as a bitmask; vertex v occupies bit v-1.
using Subset = std::uint32_t;

inline constexpr int kMaxVertices = 24;

inline int cardinality(Subset s) { return std::popcount(s); }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline Subset full_set(int n) { return n >= 32 ? ~Subset{0} : ((Subset{1} << n) - 1); }
inline Subset vertex_bit(int vertex) { return Subset{1} << (vertex - 1); }
inline int highest_vertex(Subset s) { return 32 - std::countl_zero(s); }

/// Canonical order: by cardinality, then lexicographically on the sorted vertex lists.
bool canonical_less(Subset a, Subset b);

void sort_canonical(std::vector<Subset>& sets);

/// 1-based sorted vertex list.
std::vector<int> to_vertices(Subset s);

/// Builds a subset from 1-based vertices; throws ParseError on indices outside [1, n].
Subset from_vertices(const std::vector<int>& vertices, int n);

/// "{1,3,4}"
std::string format_subset(Subset s);

/// Keeps only the inclusion-minimal (or maximal) members, canonically sorted, duplicates dropped.
std::vector<Subset> minimal_elements(std::vector<Subset> sets);
std::vector<Subset> maximal_elements(std::vector<Subset> sets);

/// All subsets of {1..n} in canonical order.
std::vector<Subset> all_subsets_canonical(int n);

}  // namespace lyutab
