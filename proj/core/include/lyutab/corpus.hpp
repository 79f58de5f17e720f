#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lyutab/complex.hpp"

namespace lyutab {

enum class CorpusFamily { kRandom, kNonpureShellable, kForest };

CorpusFamily parse_corpus_family(const std::string& name);
std::string to_string(CorpusFamily family);

struct CorpusSpec {
  CorpusFamily family = CorpusFamily::kRandom;
  int n = 5;
  int count = 10;
  /// Per-subset inclusion probability for the random family.
  double q = 0.2;
};

inline constexpr int kMaxCorpusVertices = 8;
inline constexpr int kMaxCorpusCount = 100000;

/// A facet order together with the restriction face of each facet: the minimal face of F_k
/// not already present in the complex generated by F_1..F_{k-1}.
struct ShellingCertificate {
  std::vector<Subset> order;
  std::vector<Subset> restrictions;
};

struct CorpusElement {
  SimplicialComplex complex;
  std::optional<ShellingCertificate> shelling;
};

/// (x^F : F a facet); throws DomainError if ∅ is a facet.
SquarefreeIdeal facet_ideal(const SimplicialComplex& complex);

/// The ideal whose quotient ring the corpus element stands for: the Stanley-Reisner ideal for
/// the random and shellable families, the facet ideal for forests.
SquarefreeIdeal corpus_ideal(CorpusFamily family, const CorpusElement& element);

/// Deterministic for a fixed (spec, seed).
std::vector<CorpusElement> generate_corpus(const CorpusSpec& spec, std::uint64_t seed);

/// Checks the (possibly nonpure) shelling condition facet by facet: each new facet meets the
/// complex built so far in a pure complex of codimension one, and the recorded restriction
/// face is the unique minimal new face.
bool verify_shelling(const SimplicialComplex& complex, const ShellingCertificate& cert);

/// Every nonempty subcollection of facets has a leaf.
bool is_simplicial_forest(const SimplicialComplex& complex);

}  // namespace lyutab
