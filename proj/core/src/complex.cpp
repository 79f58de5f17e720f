#include "lyutab/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

void check_vertex_count(int n) {
  if (n < 1) throw DomainError("vertex count must be at least 1");
  if (n > kMaxVertices) {
    throw ResourceError("vertex count " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxVertices));
  }
}

std::string subsets_json(const std::vector<Subset>& sets) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (k) os << ',';
    os << '[';
    const auto vs = to_vertices(sets[k]);
    for (std::size_t m = 0; m < vs.size(); ++m) {
      if (m) os << ',';
      os << vs[m];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// face[S] == 1 iff S lies in some facet.
std::vector<unsigned char> face_table(const SimplicialComplex& complex) {
  const int n = complex.vertex_count();
  const std::size_t size = std::size_t{1} << n;
  std::vector<unsigned char> face(size, 0);
  for (Subset f : complex.facets()) face[f] = 1;
  for (std::size_t s = size; s-- > 0;) {
    if (face[s]) continue;
    for (int v = 0; v < n; ++v) {
      const Subset bit = Subset{1} << v;
      if ((s & bit) == 0 && face[s | bit]) {
        face[s] = 1;
        break;
      }
    }
  }
  return face;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int n, std::vector<Subset> generators) : n_(n) {
  check_vertex_count(n);
  for (Subset g : generators) {
    if (!is_subset(g, full_set(n))) throw DomainError("face " + format_subset(g) + " uses a vertex beyond n");
  }
  facets_ = maximal_elements(std::move(generators));
}

bool SimplicialComplex::contains(Subset face) const {
  return std::any_of(facets_.begin(), facets_.end(), [face](Subset f) { return is_subset(face, f); });
}

int SimplicialComplex::dimension() const {
  if (is_void()) throw DomainError("the void complex has no dimension");
  return cardinality(facets_.back()) - 1;
}

bool SimplicialComplex::is_pure() const {
  if (is_void()) return true;
  const int top = cardinality(facets_.back());
  return std::all_of(facets_.begin(), facets_.end(), [top](Subset f) { return cardinality(f) == top; });
}

std::vector<Subset> SimplicialComplex::faces() const {
  std::vector<Subset> out;
  if (is_void()) return out;
  const auto face = face_table(*this);
  for (Subset s = 0; s < face.size(); ++s) {
    if (face[s]) out.push_back(s);
  }
  sort_canonical(out);
  return out;
}

std::vector<Subset> SimplicialComplex::faces_of_dimension(int dim) const {
  std::vector<Subset> out;
  for (Subset s : faces()) {
    if (cardinality(s) == dim + 1) out.push_back(s);
  }
  return out;
}

SquarefreeIdeal::SquarefreeIdeal(int n, std::vector<Subset> generators) : n_(n) {
  check_vertex_count(n);
  for (Subset g : generators) {
    if (g == 0) throw DomainError("the unit ideal is not a valid input");
    if (!is_subset(g, full_set(n))) throw DomainError("generator " + format_subset(g) + " uses a variable beyond n");
  }
  generators_ = minimal_elements(std::move(generators));
}

SquarefreeIdeal SquarefreeIdeal::irrelevant(int n) {
  std::vector<Subset> gens;
  for (int v = 1; v <= n; ++v) gens.push_back(vertex_bit(v));
  return SquarefreeIdeal(n, std::move(gens));
}

bool SquarefreeIdeal::contains_monomial(Subset support) const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [support](Subset g) { return is_subset(g, support); });
}

ParsedInput parse_and_canonicalize(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("missing integer field \"n\"");
  const auto n_raw = doc["n"].get<long long>();
  if (n_raw < 1) throw ParseError("\"n\" must be positive");
  if (n_raw > kMaxVertices) {
    throw ResourceError("n = " + std::to_string(n_raw) + " exceeds the cap of " + std::to_string(kMaxVertices));
  }
  const int n = static_cast<int>(n_raw);

  static constexpr const char* kStyles[] = {"generators", "facets", "primary_components"};
  std::string style;
  for (const char* key : kStyles) {
    if (doc.contains(key)) {
      if (!style.empty()) throw ParseError("give exactly one of generators, facets, primary_components");
      style = key;
    }
  }
  if (style.empty()) throw ParseError("give exactly one of generators, facets, primary_components");
  for (const auto& item : doc.items()) {
    if (item.key() != "n" && item.key() != style) throw ParseError("unexpected field \"" + item.key() + "\"");
  }

  const auto& lists = doc[style];
  if (!lists.is_array()) throw ParseError("\"" + style + "\" must be a list of lists");
  std::vector<Subset> sets;
  for (const auto& entry : lists) {
    if (!entry.is_array()) throw ParseError("\"" + style + "\" must be a list of lists");
    std::vector<int> vertices;
    for (const auto& v : entry) {
      if (!v.is_number_integer()) throw ParseError("vertex indices must be integers");
      const auto raw = v.get<long long>();
      if (raw < 1 || raw > n) {
        throw ParseError("vertex index " + std::to_string(raw) + " outside [1, " + std::to_string(n) + "]");
      }
      vertices.push_back(static_cast<int>(raw));
    }
    sets.push_back(from_vertices(vertices, n));
  }

  try {
    if (style == "generators") {
      SquarefreeIdeal ideal(n, sets);
      return {ideal, stanley_reisner_complex(ideal)};
    }
    if (style == "facets") {
      SimplicialComplex complex(n, sets);
      return {stanley_reisner_ideal(complex), complex};
    }
    SquarefreeIdeal ideal = intersect_primes(n, sets);
    return {ideal, stanley_reisner_complex(ideal)};
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string canonical_json(const SquarefreeIdeal& ideal) {
  return "{\"n\":" + std::to_string(ideal.vertex_count()) + ",\"generators\":" + subsets_json(ideal.generators()) +
         "}";
}

std::string canonical_json(const SimplicialComplex& complex) {
  return "{\"n\":" + std::to_string(complex.vertex_count()) + ",\"facets\":" + subsets_json(complex.facets()) + "}";
}

SimplicialComplex stanley_reisner_complex(const SquarefreeIdeal& ideal) {
  const int n = ideal.vertex_count();
  const std::size_t size = std::size_t{1} << n;
  std::vector<unsigned char> nonface(size, 0);
  for (Subset g : ideal.generators()) nonface[g] = 1;
  for (std::size_t s = 1; s < size; ++s) {
    if (nonface[s]) continue;
    for (Subset rest = s; rest != 0; rest &= rest - 1) {
      if (nonface[s & ~(rest & (~rest + 1))]) {
        nonface[s] = 1;
        break;
      }
    }
  }
  std::vector<Subset> facets;
  for (std::size_t s = 0; s < size; ++s) {
    if (nonface[s]) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      const Subset bit = Subset{1} << v;
      if ((s & bit) == 0 && !nonface[s | bit]) maximal = false;
    }
    if (maximal) facets.push_back(static_cast<Subset>(s));
  }
  return SimplicialComplex(n, std::move(facets));
}

SquarefreeIdeal stanley_reisner_ideal(const SimplicialComplex& complex) {
  if (complex.is_void()) throw DomainError("the void complex corresponds to the unit ideal");
  const int n = complex.vertex_count();
  const auto face = face_table(complex);
  std::vector<Subset> gens;
  for (Subset s = 0; s < face.size(); ++s) {
    if (face[s]) continue;
    bool minimal = true;
    for (Subset rest = s; rest != 0 && minimal; rest &= rest - 1) {
      if (!face[s & ~(rest & (~rest + 1))]) minimal = false;
    }
    if (minimal) gens.push_back(s);
  }
  return SquarefreeIdeal(n, std::move(gens));
}

std::vector<Subset> primary_decomposition(const SquarefreeIdeal& ideal) {
  if (ideal.is_zero()) throw DomainError("the zero ideal has no proper primary decomposition");
  const Subset all = full_set(ideal.vertex_count());
  std::vector<Subset> primes;
  const auto complex = stanley_reisner_complex(ideal);
  for (Subset f : complex.facets()) primes.push_back(all & ~f);
  sort_canonical(primes);
  return primes;
}

SquarefreeIdeal alexander_dual(const SquarefreeIdeal& ideal) {
  if (ideal.is_zero()) throw DomainError("the Alexander dual of the zero ideal is undefined");
  return SquarefreeIdeal(ideal.vertex_count(), primary_decomposition(ideal));
}

SquarefreeIdeal intersect_primes(int n, const std::vector<Subset>& prime_supports) {
  if (prime_supports.empty()) throw DomainError("an empty intersection is the unit ideal");
  const Subset all = full_set(n);
  std::vector<Subset> facets;
  for (Subset p : prime_supports) facets.push_back(all & ~p);
  return stanley_reisner_ideal(SimplicialComplex(n, std::move(facets)));
}

SimplicialComplex link(const SimplicialComplex& complex, Subset face) {
  if (!complex.contains(face)) throw DomainError("link: " + format_subset(face) + " is not a face");
  std::vector<Subset> gens;
  for (Subset f : complex.facets()) {
    if (is_subset(face, f)) gens.push_back(f & ~face);
  }
  return SimplicialComplex(complex.vertex_count(), std::move(gens));
}

SimplicialComplex pure_skeleton(const SimplicialComplex& complex, int dim) {
  const int top = complex.dimension();
  if (dim < -1 || dim > top) {
    throw DomainError("pure_skeleton: dimension " + std::to_string(dim) + " outside [-1, " + std::to_string(top) + "]");
  }
  std::vector<Subset> gens;
  const int size = dim + 1;
  for (Subset f : complex.facets()) {
    if (cardinality(f) < size) continue;
    // Enumerate the size-element subsets of f.
    for (Subset s = f;; s = (s - 1) & f) {
      if (cardinality(s) == size) gens.push_back(s);
      if (s == 0) break;
    }
  }
  return SimplicialComplex(complex.vertex_count(), std::move(gens));
}

int hochster_huneke_components(const SimplicialComplex& complex) {
  if (complex.is_void()) throw DomainError("the void complex has no Hochster-Huneke graph");
  const int top = complex.dimension() + 1;
  std::vector<Subset> tops;
  for (Subset f : complex.facets()) {
    if (cardinality(f) == top) tops.push_back(f);
  }
  std::vector<std::size_t> parent(tops.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = static_cast<int>(tops.size());
  for (std::size_t a = 0; a < tops.size(); ++a) {
    for (std::size_t b = a + 1; b < tops.size(); ++b) {
      if (cardinality(tops[a] & tops[b]) != top - 1) continue;
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
  }
  return components;
}

Subset permute(Subset s, const std::vector<int>& perm) {
  Subset out = 0;
  for (int v : to_vertices(s)) out |= vertex_bit(perm.at(v - 1));
  return out;
}

SimplicialComplex relabel(const SimplicialComplex& complex, const std::vector<int>& perm) {
  std::vector<Subset> facets;
  for (Subset f : complex.facets()) facets.push_back(permute(f, perm));
  return SimplicialComplex(complex.vertex_count(), std::move(facets));
}

SquarefreeIdeal relabel(const SquarefreeIdeal& ideal, const std::vector<int>& perm) {
  std::vector<Subset> gens;
  for (Subset g : ideal.generators()) gens.push_back(permute(g, perm));
  return SquarefreeIdeal(ideal.vertex_count(), std::move(gens));
}

}  // namespace lyutab
