#include <doctest.h>

#include <algorithm>
#include <random>

#include <json.hpp>

#include "lyutab/complex.hpp"
#include "lyutab/corpus.hpp"
#include "lyutab/errors.hpp"
#include "lyutab/lyubeznik.hpp"
#include "oracles.hpp"

using namespace lyutab;

namespace {

Subset S(std::initializer_list<int> vs) { return from_vertices(std::vector<int>(vs), 24); }

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF2 = FieldSpec::prime(2);

SquarefreeIdeal two_planes() { return intersect_primes(4, {S({1, 2}), S({3, 4})}); }
SquarefreeIdeal tree_example() { return intersect_primes(4, {S({1, 3}), S({2, 3}), S({4})}); }
SquarefreeIdeal nine_vars() {
  return intersect_primes(9, {S({1, 2}), S({3, 4}), S({5, 6}), S({7, 8}), S({9, 1}), S({9, 2}), S({9, 3}),
                              S({9, 4}), S({9, 5}), S({9, 6}), S({9, 7}), S({9, 8})});
}
SquarefreeIdeal rp2() {
  return stanley_reisner_ideal(SimplicialComplex(6, {S({1, 2, 3}), S({1, 3, 4}), S({1, 4, 5}), S({1, 5, 6}),
                                                     S({1, 2, 6}), S({2, 3, 5}), S({3, 4, 6}), S({2, 4, 5}),
                                                     S({3, 5, 6}), S({2, 4, 6})}));
}

LyubeznikTable trivial_table(int d) {
  LyubeznikTable t(d);
  t.set(d, d, 1);
  return t;
}

/// λ_{p,i} = β_{n-p,[n]}(Ext^{n-i}(R/I, ω)), read off minimal resolutions of the Ext modules.
template <class K>
LyubeznikTable table_via_betti(const K& field, const SquarefreeIdeal& ideal, int d) {
  const int n = ideal.vertex_count();
  const auto ext = ext_with_structure(field, quotient_module<K>(ideal));
  LyubeznikTable t(d);
  for (int i = 0; i <= d; ++i) {
    if (ext[n - i].is_zero()) continue;
    const auto res = minimal_free_resolution(field, ext[n - i]);
    for (int p = 0; p <= i; ++p) {
      const int step = n - p;
      if (step <= res.length()) t.set(p, i, res.betti(step, full_set(n)));
    }
  }
  return t;
}

}  // namespace

TEST_CASE("LyubeznikTable basics") {
  LyubeznikTable t(2);
  t.set(0, 1, 1);
  t.set(2, 2, 2);
  CHECK(t.at(0, 1) == 1);
  CHECK(t.at(1, 0) == 0);
  CHECK(t.euler_characteristic() == 1);
  CHECK_FALSE(t.is_trivial());
  CHECK_THROWS_AS(t.set(2, 1, 1), InvariantError);
  CHECK_THROWS_AS(t.set(0, 3, 1), InvariantError);
  CHECK(t.render() == "0 1 0\n  0 0\n    2\n");
  CHECK(trivial_table(0).render() == "1\n");

  LyubeznikTable wide(1);
  wide.set(0, 1, 12);
  wide.set(1, 1, 3);
  CHECK(wide.render() == "0  12\n   3\n");
}

TEST_CASE("worked examples") {
  SUBCASE("(x1,x2) ∩ (x3,x4)") {
    for (const auto& field : {kQ, kF2, FieldSpec::prime(3)}) {
      const auto t = lyubeznik_table(two_planes(), field);
      CHECK(t.dimension() == 2);
      LyubeznikTable expected(2);
      expected.set(0, 1, 1);
      expected.set(2, 2, 2);
      CHECK(t == expected);
    }
  }
  SUBCASE("(x1,x3) ∩ (x2,x3) ∩ (x4)") {
    CHECK(lyubeznik_table(tree_example(), kQ) == trivial_table(3));
    CHECK(local_cohomology_nonvanishing(tree_example(), kQ) == std::set<int>{1, 2});
    CHECK(is_seq_cm_homological(tree_example(), kQ));
    CHECK(is_seq_cm_duval(tree_example(), kQ));
  }
  SUBCASE("irrelevant ideal") {
    CHECK(lyubeznik_table(SquarefreeIdeal::irrelevant(4), kQ) == trivial_table(0));
  }
  SUBCASE("nine variables, twelve components") {
    for (const auto& field : {kQ, kF2}) {
      const auto a = analyze(nine_vars(), field);
      CHECK(a.d == 7);
      CHECK(a.table == trivial_table(7));
      CHECK_FALSE(is_seq_cm_homological(a));
      CHECK(local_cohomology_nonvanishing(a) == std::set<int>{2, 3, 4, 5});
      CHECK(a.off_triangle.empty());
    }
    CHECK_FALSE(is_seq_cm_duval(nine_vars(), kQ));
  }
}

TEST_CASE("deficiency_profile") {
  SUBCASE("two planes") {
    const auto k = deficiency_profile(two_planes(), kQ);
    REQUIRE(k.size() == 3);
    CHECK(k[0].is_zero);
    CHECK(*k[1].dim == 0);
    CHECK(k[1].is_cm);
    CHECK(*k[2].dim == 2);
    CHECK(k[2].is_cm);
  }
  SUBCASE("complete intersection") {
    const auto k = deficiency_profile(SquarefreeIdeal(4, {S({1}), S({2})}), kQ);
    REQUIRE(k.size() == 3);
    CHECK(k[0].is_zero);
    CHECK(k[1].is_zero);
    CHECK(*k[2].dim == 2);
    CHECK(k[2].is_cm);
  }
  SUBCASE("irrelevant ideal") {
    const auto k = deficiency_profile(SquarefreeIdeal::irrelevant(3), kQ);
    REQUIRE(k.size() == 1);
    CHECK(*k[0].dim == 0);
    CHECK(k[0].is_cm);
  }
}

TEST_CASE("classification predicates") {
  CHECK_FALSE(is_seq_cm_homological(two_planes(), kQ));
  CHECK(is_ccm(two_planes(), kQ));
  CHECK(is_seq_cm_duval(SimplicialComplex::simplex(4), kQ));
  CHECK(local_cohomology_nonvanishing(SquarefreeIdeal(2, {S({1}), S({2})}), kQ) == std::set<int>{2});
  CHECK_THROWS_AS(local_cohomology_nonvanishing(SquarefreeIdeal::zero(3), kQ), DomainError);

  SUBCASE("Reisner's test is characteristic sensitive on the projective plane") {
    const auto delta = stanley_reisner_complex(rp2());
    CHECK(is_cohen_macaulay_reisner(delta, kQ));
    CHECK_FALSE(is_cohen_macaulay_reisner(delta, kF2));
    CHECK(analyze(rp2(), kQ).ring_profile.is_cm);
    CHECK_FALSE(analyze(rp2(), kF2).ring_profile.is_cm);
  }
  SUBCASE("shellable complexes are sequentially CM and CCM") {
    for (const auto& e : generate_corpus({CorpusFamily::kNonpureShellable, 6, 15, 0.2}, 77)) {
      const auto a = analyze(stanley_reisner_ideal(e.complex), kQ);
      CHECK(is_seq_cm_duval(e.complex, kQ));
      CHECK(is_seq_cm_homological(a));
      CHECK(is_ccm(a));
    }
  }
}

TEST_CASE("a non-CCM witness exists among small random complexes") {
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 40 && !found; ++seed) {
    for (const auto& e : generate_corpus({CorpusFamily::kRandom, 6, 25, 0.45}, seed)) {
      const auto a = analyze(stanley_reisner_ideal(e.complex), kQ);
      if (!is_ccm(a)) {
        found = true;
        MESSAGE("non-CCM witness: " << canonical_json(e.complex));
        const auto r = build_report(a);
        CHECK(r.find("ccm_top_column_vanishes")->outcome == CheckOutcome::kNotApplicable);
        CHECK(r.all_passed());
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("classify_and_verify outcomes") {
  SUBCASE("two planes") {
    const auto r = classify_and_verify(two_planes(), kQ);
    CHECK(r.find("seq_cm_implies_trivial")->outcome == CheckOutcome::kNotApplicable);
    CHECK(r.find("cm_implies_trivial")->outcome == CheckOutcome::kNotApplicable);
    for (const char* name : {"euler_characteristic", "ccm_top_column_vanishes", "unmixed_superdiagonal_shape",
                             "highest_equals_hh_components", "seq_cm_oracles_agree", "table_properties"}) {
      CHECK(r.find(name)->outcome == CheckOutcome::kPass);
    }
    CHECK(r.classification.is_ccm);
    CHECK_FALSE(r.classification.is_seq_cm_hom);
    CHECK(r.classification.hh_components == 2);
  }
  SUBCASE("tree example") {
    const auto r = classify_and_verify(tree_example(), kQ);
    CHECK(r.find("seq_cm_implies_trivial")->outcome == CheckOutcome::kPass);
    CHECK(r.find("cm_implies_trivial")->outcome == CheckOutcome::kNotApplicable);
    CHECK(r.table.is_trivial());
  }
  SUBCASE("nine variables") {
    const auto r = classify_and_verify(nine_vars(), kQ);
    CHECK(r.table.is_trivial());
    CHECK_FALSE(r.classification.is_seq_cm_hom);
    CHECK(r.find("seq_cm_implies_trivial")->outcome == CheckOutcome::kNotApplicable);
    CHECK(r.find("highest_equals_hh_components")->outcome == CheckOutcome::kPass);
  }
  SUBCASE("zero ideal") {
    const auto r = classify_and_verify(SquarefreeIdeal::zero(3), kQ);
    CHECK(r.classification.is_cm);
    CHECK(r.table == trivial_table(3));
  }
  SUBCASE("implication failures surface with the report") {
    VerificationReport r;
    r.ideal = two_planes();
    r.checks.push_back({"euler_characteristic", CheckOutcome::kFail, "sum = 2"});
    const ImplicationFailure failure(r);
    CHECK(std::string(failure.what()).find("euler_characteristic") != std::string::npos);
    CHECK_FALSE(failure.report().all_passed());
  }
}

TEST_CASE("report JSON") {
  const auto j = nlohmann::json::parse(report_json(classify_and_verify(two_planes(), kF2)));
  CHECK(j["d"] == 2);
  CHECK(j["table"] == nlohmann::json::parse("[[0,1,0],[0,0,0],[0,0,2]]"));
  CHECK(j["trivial"] == false);
  CHECK(j["field"]["characteristic"] == 2);
  CHECK(j["classification"]["canonically_cm"] == true);
  CHECK(j["classification"]["lc_nonvanishing"] == nlohmann::json::parse("[2,3]"));
  CHECK(j["checks"].size() == check_names().size());
  CHECK_FALSE(j.contains("failures"));
  CHECK(report_text(classify_and_verify(two_planes(), kF2)).find("0 1 0\n  0 0\n    2\n") != std::string::npos);
}

TEST_CASE("double Ext agrees with the Betti-number route") {
  const RationalField q;
  const PrimeField f2(2);
  auto check_one = [&](const SquarefreeIdeal& ideal) {
    const auto a = analyze(ideal, kQ);
    CHECK(a.table == table_via_betti(q, ideal, a.d));
    const auto b = analyze(ideal, kF2);
    CHECK(b.table == table_via_betti(f2, ideal, b.d));
  };
  check_one(two_planes());
  check_one(nine_vars());
  check_one(rp2());
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 6, 30, 0.3}, 2024)) {
    check_one(stanley_reisner_ideal(e.complex));
  }
}

TEST_CASE("tables are invariant under vertex relabeling") {
  std::mt19937 rng(41);
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 6, 30, 0.3}, 55)) {
    std::vector<int> perm{1, 2, 3, 4, 5, 6};
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto ideal = stanley_reisner_ideal(e.complex);
    const auto a = analyze(ideal, kQ);
    const auto b = analyze(relabel(ideal, perm), kQ);
    CHECK(a.table == b.table);
    CHECK(is_seq_cm_homological(a) == is_seq_cm_homological(b));
    CHECK(is_ccm(a) == is_ccm(b));
    CHECK(a.ring_profile.depth == b.ring_profile.depth);
  }
}

TEST_CASE("tables over Q and F_p agree below six vertices") {
  // torsion in the homology of links first appears with six vertices (the projective plane)
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 60, 0.35}, 303)) {
    const auto ideal = stanley_reisner_ideal(e.complex);
    const auto t = lyubeznik_table(ideal, kQ);
    CHECK(lyubeznik_table(ideal, kF2) == t);
    CHECK(lyubeznik_table(ideal, FieldSpec::prime(3)) == t);
  }
  CHECK(lyubeznik_table(rp2(), kQ) == trivial_table(3));
  CHECK_FALSE(lyubeznik_table(rp2(), kF2) == trivial_table(3));
}

TEST_CASE("Hochster-formula cross-check in the library agrees with its own engine") {
  for (const auto& e : generate_corpus({CorpusFamily::kRandom, 5, 30, 0.3}, 6)) {
    CHECK(hochster_formula_mismatches(analyze(stanley_reisner_ideal(e.complex), kF2)).empty());
  }
}
