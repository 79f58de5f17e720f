#include "lyutab/subset.hpp"

#include <algorithm>
#include <sstream>

#include "lyutab/errors.hpp"

namespace lyutab {

bool canonical_less(Subset a, Subset b) {
  const int ca = cardinality(a);
  const int cb = cardinality(b);
  if (ca != cb) return ca < cb;
  const Subset diff = a ^ b;
  if (diff == 0) return false;
  // The lowest differing vertex decides: whoever owns it has the smaller entry there.
  return (a & diff & (~diff + 1)) != 0;
}

void sort_canonical(std::vector<Subset>& sets) {
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

std::vector<int> to_vertices(Subset s) {
  std::vector<int> out;
  out.reserve(cardinality(s));
  while (s != 0) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

Subset from_vertices(const std::vector<int>& vertices, int n) {
  Subset s = 0;
  for (int v : vertices) {
    if (v < 1 || v > n) {
      throw ParseError("vertex index " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
    }
    s |= vertex_bit(v);
  }
  return s;
}

std::string format_subset(Subset s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int v : to_vertices(s)) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<Subset> minimal_elements(std::vector<Subset> sets) {
  sort_canonical(sets);
  std::vector<Subset> out;
  for (Subset s : sets) {
    // Canonical order lists every proper subset of s before s.
    const bool dominated =
        std::any_of(out.begin(), out.end(), [s](Subset m) { return is_subset(m, s); });
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<Subset> maximal_elements(std::vector<Subset> sets) {
  sort_canonical(sets);
  std::vector<Subset> kept;
  for (auto it = sets.rbegin(); it != sets.rend(); ++it) {
    const Subset s = *it;
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [s](Subset m) { return is_subset(s, m); });
    if (!dominated) kept.push_back(s);
  }
  sort_canonical(kept);
  return kept;
}

std::vector<Subset> all_subsets_canonical(int n) {
  std::vector<Subset> out(std::size_t{1} << n);
  for (Subset s = 0; s < out.size(); ++s) out[s] = s;
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace lyutab
