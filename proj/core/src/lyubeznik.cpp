#include "lyutab/lyubeznik.hpp"

#include <algorithm>
#include <sstream>

#include "lyutab/cache.hpp"
#include "lyutab/homology.hpp"

namespace lyutab {

LyubeznikTable::LyubeznikTable(int d) : d_(d), entries_(static_cast<std::size_t>(d + 1) * (d + 1), 0) {
  if (d < 0) throw DomainError("Lyubeznik table needs d >= 0");
}

std::uint64_t LyubeznikTable::at(int p, int i) const {
  if (p < 0 || i < 0 || p > i || i > d_) return 0;
  return entries_[index(p, i)];
}

void LyubeznikTable::set(int p, int i, std::uint64_t value) {
  if (p < 0 || p > i || i > d_) {
    throw InvariantError("λ_{" + std::to_string(p) + "," + std::to_string(i) + "} lies outside the table");
  }
  entries_[index(p, i)] = value;
}

bool LyubeznikTable::is_trivial() const {
  for (int i = 0; i <= d_; ++i) {
    for (int p = 0; p <= i; ++p) {
      const std::uint64_t expected = (p == d_ && i == d_) ? 1 : 0;
      if (at(p, i) != expected) return false;
    }
  }
  return true;
}

long long LyubeznikTable::euler_characteristic() const {
  long long sum = 0;
  for (int i = 0; i <= d_; ++i) {
    for (int p = 0; p <= i; ++p) {
      const auto v = static_cast<long long>(at(p, i));
      sum += ((i - p) % 2 == 0) ? v : -v;
    }
  }
  return sum;
}

std::vector<std::vector<std::uint64_t>> LyubeznikTable::rows() const {
  std::vector<std::vector<std::uint64_t>> out(d_ + 1, std::vector<std::uint64_t>(d_ + 1, 0));
  for (int p = 0; p <= d_; ++p) {
    for (int i = p; i <= d_; ++i) out[p][i] = at(p, i);
  }
  return out;
}

std::string LyubeznikTable::render() const {
  std::size_t width = 1;
  for (int p = 0; p <= d_; ++p) {
    for (int i = p; i <= d_; ++i) width = std::max(width, std::to_string(at(p, i)).size());
  }
  std::ostringstream os;
  for (int p = 0; p <= d_; ++p) {
    std::string line(static_cast<std::size_t>(p) * (width + 1), ' ');
    for (int i = p; i <= d_; ++i) {
      std::string cell = std::to_string(at(p, i));
      cell.resize(width, ' ');
      line += cell;
      if (i < d_) line += ' ';
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

namespace {

template <class K>
RingAnalysis analyze_over(const K& field, const FieldSpec& spec, const SquarefreeIdeal& ideal,
                          ResolutionCache* cache) {
  RingAnalysis a;
  a.field = spec;
  a.ideal = ideal;
  a.complex = stanley_reisner_complex(ideal);
  a.n = ideal.vertex_count();
  a.d = a.complex.dimension() + 1;
  const int n = a.n;

  const auto quotient = quotient_module<K>(ideal);
  FreeResolution<K> res;
  std::vector<SquarefreeModule<K>> ext;
  bool loaded = false;
  std::string key;
  const std::string material = ResolutionCache::key_material(ideal, spec);
  if (cache != nullptr) {
    key = ResolutionCache::key_for(ideal, spec);
    if (auto payload = cache->load(key)) {
      try {
        read_first_level_payload(field, *payload, material, res, ext);
        loaded = true;
      } catch (const ParseError& e) {
        cache->warn("cache entry " + key + " unreadable (" + e.what() + "); recomputing");
      }
    }
  }
  if (!loaded) {
    res = minimal_free_resolution(field, quotient);
    res.check_invariants(field);
    ext = ext_with_structure(field, res);
    if (cache != nullptr) cache->store(key, first_level_payload(material, res, ext));
  }

  a.ext_dims.assign(n + 1, std::vector<std::size_t>(std::size_t{1} << n, 0));
  for (int j = 0; j <= n; ++j) {
    for (Subset g = 0; g < (Subset{1} << n); ++g) a.ext_dims[j][g] = ext[j].dim(g);
  }
  a.ring_profile = module_profile(field, quotient, res);

  // λ_{p,i} = dim Ext^{n-p}(Ext^{n-i}(R/I, ω), ω)_∅; every (p, i) is computed so that entries
  // outside the triangle are observed rather than assumed.
  a.table = LyubeznikTable(a.d);
  a.deficiency.assign(a.d + 1, ModuleProfile{});
  for (int i = 0; i <= n; ++i) {
    const auto& k_i = ext[n - i];
    if (k_i.is_zero()) continue;
    const auto res_i = minimal_free_resolution(field, k_i);
    res_i.check_invariants(field);
    if (i <= a.d) a.deficiency[i] = module_profile(field, k_i, res_i);
    const auto at_origin = ext_fiber_dims(field, res_i, Subset{0});
    for (int p = 0; p <= n; ++p) {
      const std::size_t value = at_origin[n - p];
      if (value == 0) continue;
      if (p <= i && i <= a.d) {
        a.table.set(p, i, value);
      } else {
        a.off_triangle.emplace_back(p, i);
      }
    }
  }
  return a;
}

}  // namespace

RingAnalysis analyze(const SquarefreeIdeal& ideal, const FieldSpec& field, ResolutionCache* cache) {
  return with_field(field, [&](const auto& k) { return analyze_over(k, field, ideal, cache); });
}

bool is_seq_cm_homological(const RingAnalysis& a) {
  for (int i = 0; i <= a.d; ++i) {
    const auto& p = a.deficiency[i];
    if (!p.is_zero && !(p.is_cm && p.dim == i)) return false;
  }
  return true;
}

bool is_ccm(const RingAnalysis& a) {
  const auto& canonical = a.deficiency[a.d];
  return !canonical.is_zero && canonical.is_cm && canonical.dim == a.d;
}

std::set<int> local_cohomology_nonvanishing(const RingAnalysis& a) {
  if (a.ideal.is_zero()) throw DomainError("local cohomology support is undefined here for the zero ideal");
  std::set<int> out;
  for (int j = 0; j <= a.n; ++j) {
    if (std::any_of(a.ext_dims[j].begin(), a.ext_dims[j].end(), [](std::size_t d) { return d > 0; })) {
      out.insert(j);
    }
  }
  return out;
}

LyubeznikTable lyubeznik_table(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return analyze(ideal, field).table;
}

std::vector<ModuleProfile> deficiency_profile(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return analyze(ideal, field).deficiency;
}

bool is_seq_cm_homological(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return is_seq_cm_homological(analyze(ideal, field));
}

bool is_ccm(const SquarefreeIdeal& ideal, const FieldSpec& field) { return is_ccm(analyze(ideal, field)); }

std::set<int> local_cohomology_nonvanishing(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  if (ideal.is_zero()) throw DomainError("local cohomology support is undefined here for the zero ideal");
  return local_cohomology_nonvanishing(analyze(ideal, field));
}

std::vector<std::string> hochster_formula_mismatches(const RingAnalysis& a) {
  std::vector<std::string> out;
  const int n = a.n;
  for (Subset f = 0; f < (Subset{1} << n); ++f) {
    std::vector<std::size_t> h;
    int top = -2;
    const bool in_complex = a.complex.contains(f);
    if (in_complex) {
      const auto lk = link(a.complex, f);
      h = reduced_simplicial_homology(lk, a.field);
      top = lk.dimension();
    }
    for (int i = 0; i <= n; ++i) {
      const int k = i - cardinality(f) - 1;
      const std::size_t expected = (in_complex && k >= -1 && k <= top) ? h[k + 1] : 0;
      const std::size_t actual = a.ext_dims[n - i][f];
      if (actual != expected) {
        out.push_back("dim Ext^" + std::to_string(n - i) + "_" + format_subset(f) + " = " + std::to_string(actual) +
                      " but link homology gives " + std::to_string(expected));
      }
    }
  }
  return out;
}

bool is_cohen_macaulay_reisner(const SimplicialComplex& complex, const FieldSpec& field) {
  for (Subset face : complex.faces()) {
    const auto lk = link(complex, face);
    const auto h = reduced_simplicial_homology(lk, field);
    const int top = lk.dimension();
    for (int j = -1; j < top; ++j) {
      if (h[j + 1] != 0) return false;
    }
  }
  return true;
}

bool is_seq_cm_duval(const SimplicialComplex& complex, const FieldSpec& field) {
  const int top = complex.dimension();
  for (int i = 0; i <= top; ++i) {
    if (!is_cohen_macaulay_reisner(pure_skeleton(complex, i), field)) return false;
  }
  return true;
}

bool is_seq_cm_duval(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return is_seq_cm_duval(stanley_reisner_complex(ideal), field);
}

}  // namespace lyutab
