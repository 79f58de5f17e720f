#include "lyutab/corpus.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

using Rng = std::mt19937_64;

// std::uniform_int_distribution is not pinned down across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

bool bernoulli(Rng& rng, double q) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < q;
}

bool is_old_face(const std::vector<Subset>& facets, Subset g) {
  return std::any_of(facets.begin(), facets.end(), [g](Subset f) { return is_subset(g, f); });
}

// Restriction face of `candidate` against the complex generated by `facets`, or nullopt when
// the new faces of `candidate` do not form an interval [R, candidate].
std::optional<Subset> restriction_face(const std::vector<Subset>& facets, Subset candidate) {
  if (facets.empty()) return Subset{0};
  Subset restriction = 0;
  for (Subset rest = candidate; rest != 0; rest &= rest - 1) {
    const Subset bit = rest & (~rest + 1);
    if (is_old_face(facets, candidate & ~bit)) restriction |= bit;
  }
  if (restriction == 0) return std::nullopt;
  for (Subset g = candidate;; g = (g - 1) & candidate) {
    const bool is_new = !is_old_face(facets, g);
    if (is_new != is_subset(restriction, g)) return std::nullopt;
    if (g == 0) break;
  }
  return restriction;
}

CorpusElement random_complex(const CorpusSpec& spec, Rng& rng) {
  std::vector<Subset> chosen;
  for (Subset s : all_subsets_canonical(spec.n)) {
    if (s != 0 && bernoulli(rng, spec.q)) chosen.push_back(s);
  }
  if (chosen.empty()) return {SimplicialComplex::empty_complex(spec.n), std::nullopt};
  return {SimplicialComplex(spec.n, std::move(chosen)), std::nullopt};
}

CorpusElement shellable_complex(const CorpusSpec& spec, Rng& rng) {
  const auto all = all_subsets_canonical(spec.n);
  const auto target = 1 + uniform_below(rng, 2 * static_cast<std::uint64_t>(spec.n));
  ShellingCertificate cert;
  while (cert.order.size() < target) {
    // Valid candidates grouped by cardinality, each group in canonical order.
    std::map<int, std::vector<std::pair<Subset, Subset>>> by_size;
    for (Subset s : all) {
      if (s == 0 || is_old_face(cert.order, s)) continue;
      const bool swallows = std::any_of(cert.order.begin(), cert.order.end(),
                                        [s](Subset f) { return is_subset(f, s); });
      if (swallows) continue;
      if (auto r = restriction_face(cert.order, s)) by_size[cardinality(s)].emplace_back(s, *r);
    }
    if (by_size.empty()) break;
    auto group = by_size.begin();
    std::advance(group, static_cast<long>(uniform_below(rng, by_size.size())));
    const auto& [facet, restriction] = group->second[uniform_below(rng, group->second.size())];
    cert.order.push_back(facet);
    cert.restrictions.push_back(restriction);
  }
  return {SimplicialComplex(spec.n, cert.order), cert};
}

CorpusElement forest_complex(const CorpusSpec& spec, Rng& rng) {
  std::vector<int> fresh(spec.n);
  for (int v = 0; v < spec.n; ++v) fresh[v] = v + 1;
  for (std::size_t k = fresh.size(); k > 1; --k) std::swap(fresh[k - 1], fresh[uniform_below(rng, k)]);

  auto take_fresh = [&](int wanted) {
    Subset out = 0;
    while (wanted-- > 0 && !fresh.empty()) {
      out |= vertex_bit(fresh.back());
      fresh.pop_back();
    }
    return out;
  };

  std::vector<Subset> facets{take_fresh(1 + static_cast<int>(uniform_below(rng, 3)))};
  const auto target = 1 + uniform_below(rng, static_cast<std::uint64_t>(spec.n));
  int attempts = 0;
  while (facets.size() < target && !fresh.empty() && attempts < 64) {
    ++attempts;
    const Subset anchor = facets[uniform_below(rng, facets.size())];
    Subset shared = 0;
    for (int v : to_vertices(anchor)) {
      if (bernoulli(rng, 0.5)) shared |= vertex_bit(v);
    }
    if (shared == anchor) shared &= shared - 1;
    const auto saved = fresh;
    const Subset added = take_fresh(1 + static_cast<int>(uniform_below(rng, 2)));
    auto trial = facets;
    trial.push_back(shared | added);
    if (is_simplicial_forest(SimplicialComplex(spec.n, trial))) {
      facets = std::move(trial);
    } else {
      fresh = saved;
    }
  }
  return {SimplicialComplex(spec.n, std::move(facets)), std::nullopt};
}

}  // namespace

CorpusFamily parse_corpus_family(const std::string& name) {
  if (name == "random") return CorpusFamily::kRandom;
  if (name == "nonpure-shellable") return CorpusFamily::kNonpureShellable;
  if (name == "forest") return CorpusFamily::kForest;
  throw DomainError("unknown corpus family \"" + name + "\"");
}

std::string to_string(CorpusFamily family) {
  switch (family) {
    case CorpusFamily::kRandom:
      return "random";
    case CorpusFamily::kNonpureShellable:
      return "nonpure-shellable";
    case CorpusFamily::kForest:
      return "forest";
  }
  return "?";
}

SquarefreeIdeal facet_ideal(const SimplicialComplex& complex) {
  if (complex.is_void()) return SquarefreeIdeal::zero(complex.vertex_count());
  for (Subset f : complex.facets()) {
    if (f == 0) throw DomainError("the facet ideal of {∅} is the unit ideal");
  }
  return SquarefreeIdeal(complex.vertex_count(), complex.facets());
}

SquarefreeIdeal corpus_ideal(CorpusFamily family, const CorpusElement& element) {
  if (family == CorpusFamily::kForest) return facet_ideal(element.complex);
  return stanley_reisner_ideal(element.complex);
}

std::vector<CorpusElement> generate_corpus(const CorpusSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.n > kMaxCorpusVertices) {
    throw ResourceError("corpus vertex count must lie in [1, " + std::to_string(kMaxCorpusVertices) + "]");
  }
  if (spec.count < 1 || spec.count > kMaxCorpusCount) {
    throw ResourceError("corpus count must lie in [1, " + std::to_string(kMaxCorpusCount) + "]");
  }
  if (!(spec.q >= 0.0 && spec.q <= 1.0)) throw DomainError("q must lie in [0, 1]");

  Rng rng(seed);
  std::vector<CorpusElement> out;
  out.reserve(spec.count);
  for (int k = 0; k < spec.count; ++k) {
    switch (spec.family) {
      case CorpusFamily::kRandom:
        out.push_back(random_complex(spec, rng));
        break;
      case CorpusFamily::kNonpureShellable:
        out.push_back(shellable_complex(spec, rng));
        break;
      case CorpusFamily::kForest:
        out.push_back(forest_complex(spec, rng));
        break;
    }
  }
  return out;
}

bool verify_shelling(const SimplicialComplex& complex, const ShellingCertificate& cert) {
  if (cert.order.size() != cert.restrictions.size()) return false;
  auto sorted = cert.order;
  sort_canonical(sorted);
  if (sorted.size() != cert.order.size() || sorted != complex.facets()) return false;
  std::vector<Subset> built;
  for (std::size_t k = 0; k < cert.order.size(); ++k) {
    const auto r = restriction_face(built, cert.order[k]);
    if (!r || *r != cert.restrictions[k]) return false;
    built.push_back(cert.order[k]);
  }
  return true;
}

bool is_simplicial_forest(const SimplicialComplex& complex) {
  const auto& facets = complex.facets();
  const std::size_t m = facets.size();
  if (m > 20) throw ResourceError("forest check is exponential in the facet count; at most 20 facets");
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    if (std::popcount(mask) == 1) continue;
    bool has_leaf = false;
    for (std::size_t f = 0; f < m && !has_leaf; ++f) {
      if (!(mask >> f & 1u)) continue;
      // Candidate branches g: every other facet h meets f inside g.
      for (std::size_t g = 0; g < m && !has_leaf; ++g) {
        if (g == f || !(mask >> g & 1u)) continue;
        bool branch = true;
        for (std::size_t h = 0; h < m && branch; ++h) {
          if (h == f || !(mask >> h & 1u)) continue;
          branch = is_subset(facets[f] & facets[h], facets[g]);
        }
        has_leaf = branch;
      }
    }
    if (!has_leaf) return false;
  }
  return true;
}

}  // namespace lyutab
