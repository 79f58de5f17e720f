#include <doctest.h>

#include "lyutab/complex.hpp"
#include "lyutab/corpus.hpp"
#include "lyutab/errors.hpp"
#include "lyutab/homology.hpp"
#include "lyutab/sqmod.hpp"
#include "oracles.hpp"

using namespace lyutab;

namespace {

Subset S(std::initializer_list<int> vs) { return from_vertices(std::vector<int>(vs), 24); }

SquarefreeIdeal two_planes() { return SquarefreeIdeal(4, {S({1, 3}), S({1, 4}), S({2, 3}), S({2, 4})}); }

template <class K>
void check_ext_against_hochster(const K& field, const SquarefreeIdeal& ideal, long long p) {
  const int n = ideal.vertex_count();
  const auto delta = stanley_reisner_complex(ideal);
  const auto ext = ext_with_structure(field, quotient_module<K>(ideal));
  REQUIRE(ext.size() == static_cast<std::size_t>(n) + 1);
  for (Subset f = 0; f < (Subset{1} << n); ++f) {
    std::vector<std::size_t> h;
    if (delta.contains(f)) h = oracle::reduced_homology(n, oracle::link_facets(delta.facets(), f), p);
    for (int i = 0; i <= n; ++i) {
      const int k = i - cardinality(f) - 1;
      const std::size_t expected = (k >= -1 && k + 1 < static_cast<int>(h.size())) ? h[k + 1] : 0;
      CHECK(ext[n - i].dim(f) == expected);
    }
  }
}

}  // namespace

TEST_CASE("quotient_module") {
  const RationalField q;
  const auto k = quotient_module<RationalField>(SquarefreeIdeal::irrelevant(3));
  CHECK(k.dim(0) == 1);
  CHECK(k.total_dim() == 1);

  const auto r = quotient_module<RationalField>(SquarefreeIdeal::zero(3));
  CHECK(r.total_dim() == 8);
  for (Subset f = 0; f < 8; ++f) {
    for (int j = 0; j < 3; ++j) {
      if (!(f >> j & 1u)) CHECK(r.mult(f, j) == Matrix<RationalField>::identity(1));
    }
  }
  r.check_invariants(q);

  const auto m = quotient_module<RationalField>(two_planes());
  for (Subset f = 0; f < 16; ++f) {
    const bool face = f == 0 || cardinality(f) == 1 || f == S({1, 2}) || f == S({3, 4});
    CHECK(m.dim(f) == (face ? 1u : 0u));
  }
}

TEST_CASE("module invariants catch non-commuting squares") {
  const RationalField q;
  SquarefreeModule<RationalField> m(2);
  for (Subset f = 0; f < 4; ++f) m.set_dim(f, 1);
  Matrix<RationalField> one = Matrix<RationalField>::identity(1);
  Matrix<RationalField> two(1, 1);
  two(0, 0) = 2;
  m.set_mult(0, 0, one);
  m.set_mult(0, 1, one);
  m.set_mult(S({1}), 1, one);
  m.set_mult(S({2}), 0, two);
  CHECK_THROWS_AS(m.check_invariants(q), InvariantError);
  m.set_mult(S({2}), 0, one);
  CHECK_NOTHROW(m.check_invariants(q));
}

TEST_CASE("minimal_free_resolution examples") {
  const RationalField q;
  SUBCASE("principal ideal") {
    const auto res = minimal_free_resolution(q, quotient_module<RationalField>(SquarefreeIdeal(2, {S({1, 2})})));
    CHECK(res.length() == 1);
    CHECK(res.betti(0, 0) == 1);
    CHECK(res.betti(1, S({1, 2})) == 1);
    CHECK(res.total_betti() == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("Koszul complex of k") {
    const auto res = minimal_free_resolution(q, quotient_module<RationalField>(SquarefreeIdeal::irrelevant(2)));
    CHECK(res.betti(0, 0) == 1);
    CHECK(res.betti(1, S({1})) == 1);
    CHECK(res.betti(1, S({2})) == 1);
    CHECK(res.betti(2, S({1, 2})) == 1);
    CHECK(res.total_betti() == std::vector<std::size_t>{1, 2, 1});
  }
  SUBCASE("two planes") {
    const auto res = minimal_free_resolution(q, quotient_module<RationalField>(two_planes()));
    CHECK(res.total_betti() == std::vector<std::size_t>{1, 4, 4, 1});
    res.check_invariants(q);
  }
}

TEST_CASE("resolution strands are exact with homology M_G in degree 0") {
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 40, 0.3}, 8)) {
    const auto ideal = stanley_reisner_ideal(e.complex);
    const PrimeField f5(5);
    const auto module = quotient_module<PrimeField>(ideal);
    const auto res = minimal_free_resolution(f5, module);
    res.check_invariants(f5);
    CHECK(res.length() <= 5);
    for (Subset g = 0; g < 32; ++g) {
      const auto h = homology_with_projection(f5, resolution_strand(res, g));
      for (std::size_t t = 0; t < h.size(); ++t) CHECK(h[t].dim == (t == 0 ? module.dim(g) : 0));
    }
    // minimality: no unit entries between generators of equal degree
    for (int t = 1; t <= res.length(); ++t) {
      const auto& d = res.differentials[t];
      for (std::size_t a = 0; a < d.rows(); ++a) {
        for (std::size_t b = 0; b < d.cols(); ++b) {
          if (res.degrees[t - 1][a] == res.degrees[t][b]) CHECK(d(a, b) == 0);
        }
      }
    }
  }
}

TEST_CASE("ext_with_structure examples") {
  const RationalField q;
  SUBCASE("k is self-dual") {
    for (int n : {1, 3, 4}) {
      const auto ext = ext_with_structure(q, quotient_module<RationalField>(SquarefreeIdeal::irrelevant(n)));
      for (int j = 0; j <= n; ++j) CHECK(ext[j].total_dim() == (j == n ? 1u : 0u));
      CHECK(ext[n].dim(0) == 1);
    }
  }
  SUBCASE("complete intersection (x1, x2)") {
    const auto ext = ext_with_structure(q, quotient_module<RationalField>(SquarefreeIdeal(4, {S({1}), S({2})})));
    for (int j = 0; j <= 4; ++j) {
      for (Subset f = 0; f < 16; ++f) CHECK(ext[j].dim(f) == (j == 2 && f == S({3, 4}) ? 1u : 0u));
    }
  }
  SUBCASE("two planes") {
    const auto ext = ext_with_structure(q, quotient_module<RationalField>(two_planes()));
    for (Subset f = 0; f < 16; ++f) {
      CHECK(ext[2].dim(f) == (f == S({1, 2}) || f == S({3, 4}) ? 1u : 0u));
      CHECK(ext[3].dim(f) == (f == 0 ? 1u : 0u));
      CHECK(ext[4].dim(f) == 0);
      CHECK(ext[0].dim(f) == 0);
      CHECK(ext[1].dim(f) == 0);
    }
  }
}

TEST_CASE("Ext fibers match the Hochster formula on independent link homology") {
  const RationalField q;
  const PrimeField f2(2);
  const PrimeField f3(3);
  check_ext_against_hochster(q, two_planes(), 0);
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 40, 0.3}, 4)) {
    const auto ideal = stanley_reisner_ideal(e.complex);
    check_ext_against_hochster(q, ideal, 0);
    check_ext_against_hochster(f3, ideal, 3);
  }
  for (const auto& e : generate_corpus({CorpusFamily::kNonpureShellable, 6, 10, 0.2}, 4)) {
    check_ext_against_hochster(f2, stanley_reisner_ideal(e.complex), 2);
  }
  const auto rp2 = parse_and_canonicalize(
      R"({"n":6,"facets":[[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],[2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]]})");
  check_ext_against_hochster(q, rp2.ideal, 0);
  check_ext_against_hochster(f2, rp2.ideal, 2);
}

TEST_CASE("Euler characteristic of the dual complex at every degree") {
  const PrimeField f7(7);
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 30, 0.35}, 12)) {
    const auto res = minimal_free_resolution(f7, quotient_module<PrimeField>(stanley_reisner_ideal(e.complex)));
    const auto dims = ext_dimensions(f7, res);
    for (Subset g = 0; g < 32; ++g) {
      long long cochains = 0;
      for (int t = 0; t <= res.length(); ++t) {
        long long count = 0;
        for (Subset deg : res.degrees[t]) count += is_subset(full_set(5) & ~g, deg) ? 1 : 0;
        cochains += (t % 2 == 0) ? count : -count;
      }
      long long ext_sum = 0;
      for (int j = 0; j <= 5; ++j) ext_sum += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(dims[j][g]);
      CHECK(cochains == ext_sum);
    }
  }
}

TEST_CASE("Ext modules satisfy the module invariants and have finite resolutions") {
  const RationalField q;
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 20, 0.3}, 31)) {
    for (const auto& m : ext_with_structure(q, quotient_module<RationalField>(stanley_reisner_ideal(e.complex)))) {
      m.check_invariants(q);
      const auto res = minimal_free_resolution(q, m);
      res.check_invariants(q);
      CHECK(res.length() <= 5);
    }
  }
}

TEST_CASE("module_profile") {
  const RationalField q;
  const auto zero = module_profile(q, SquarefreeModule<RationalField>(3));
  CHECK(zero.is_zero);
  CHECK(zero.is_cm);
  CHECK_FALSE(zero.dim.has_value());

  const auto k = module_profile(q, quotient_module<RationalField>(SquarefreeIdeal::irrelevant(3)));
  CHECK(*k.dim == 0);
  CHECK(*k.depth == 0);
  CHECK(k.is_cm);

  const auto planes = module_profile(q, quotient_module<RationalField>(two_planes()));
  CHECK(*planes.dim == 2);
  CHECK(*planes.depth == 1);
  CHECK_FALSE(planes.is_cm);
  CHECK(planes.nonvanishing_ext == std::set<int>{2, 3});
}

TEST_CASE("module engine bound") {
  CHECK_THROWS_AS(quotient_module<RationalField>(SquarefreeIdeal::irrelevant(17)), ResourceError);
}
