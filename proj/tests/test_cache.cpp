#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lyutab/cache.hpp"
#include "lyutab/complex.hpp"
#include "lyutab/errors.hpp"
#include "lyutab/lyubeznik.hpp"

using namespace lyutab;
namespace fs = std::filesystem;

namespace {

Subset S(std::initializer_list<int> vs) { return from_vertices(std::vector<int>(vs), 24); }

SquarefreeIdeal two_planes() { return intersect_primes(4, {S({1, 2}), S({3, 4})}); }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("lyutab-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("cache keys") {
  const auto a = ResolutionCache::key_for(two_planes(), FieldSpec::rationals());
  CHECK(a.size() == 16);
  CHECK(a == ResolutionCache::key_for(intersect_primes(4, {S({3, 4}), S({1, 2})}), FieldSpec::rationals()));
  CHECK(a != ResolutionCache::key_for(two_planes(), FieldSpec::prime(2)));
}

TEST_CASE("serialization round trips bit-exactly") {
  const RationalField q;
  const PrimeField f3(3);
  const auto res = minimal_free_resolution(q, quotient_module<RationalField>(two_planes()));
  const auto text = resolution_to_json(res);
  const auto back = resolution_from_json(q, text);
  CHECK(back.degrees == res.degrees);
  CHECK(resolution_to_json(back) == text);

  for (const auto& m : ext_with_structure(f3, quotient_module<PrimeField>(two_planes()))) {
    const auto s = module_to_json(m);
    const auto m2 = module_from_json(f3, s);
    CHECK(m2 == m);
    CHECK(module_to_json(m2) == s);
  }
  CHECK_THROWS_AS(resolution_from_json(q, "{"), ParseError);
  CHECK_THROWS_AS(resolution_from_json(q, R"({"n":2,"steps":[{"degrees":[[3]],"differential":[]}]})"), ParseError);
}

TEST_CASE("store, load, and reject damaged entries") {
  TempDir dir;
  std::vector<std::string> warnings;
  ResolutionCache cache(dir.path, [&](const std::string& w) { warnings.push_back(w); });
  const auto field = FieldSpec::rationals();
  const auto key = ResolutionCache::key_for(two_planes(), field);

  const auto cold = analyze(two_planes(), field, &cache);
  REQUIRE(fs::exists(cache.path_for(key)));
  const auto stored = slurp(cache.path_for(key));
  CHECK(stored.rfind("lyutab-cache v1 ", 0) == 0);
  const auto payload = cache.load(key);
  REQUIRE(payload.has_value());

  const auto warm = analyze(two_planes(), field, &cache);
  CHECK(warm.table == cold.table);
  CHECK(warm.ext_dims == cold.ext_dims);
  CHECK(report_json(build_report(warm)) == report_json(build_report(cold)));
  CHECK(warnings.empty());

  SUBCASE("a flipped byte fails the checksum and is recomputed") {
    std::string damaged = stored;
    damaged[damaged.size() / 2] ^= 0x01;
    std::ofstream(cache.path_for(key), std::ios::binary | std::ios::trunc) << damaged;
    CHECK_FALSE(cache.load(key).has_value());
    CHECK(warnings.size() == 1);
    const auto again = analyze(two_planes(), field, &cache);
    CHECK(again.table == cold.table);
    CHECK(slurp(cache.path_for(key)) == stored);
  }
  SUBCASE("a damaged header is rejected") {
    std::ofstream(cache.path_for(key), std::ios::binary | std::ios::trunc) << "garbage";
    CHECK_FALSE(cache.load(key).has_value());
    CHECK_FALSE(warnings.empty());
  }
  SUBCASE("an entry with a valid checksum but foreign key material is not trusted") {
    const auto other = ResolutionCache::key_for(two_planes(), FieldSpec::prime(2));
    fs::copy_file(cache.path_for(key), cache.path_for(other));
    const auto f2 = analyze(two_planes(), FieldSpec::prime(2), &cache);
    CHECK(f2.table == cold.table);
    CHECK_FALSE(warnings.empty());
  }
  SUBCASE("no temporary files are left behind") {
    for (const auto& entry : fs::directory_iterator(dir.path)) {
      CHECK(entry.path().extension() == ".lyc");
    }
  }
}

TEST_CASE("an unusable cache directory degrades to cache-off") {
  TempDir dir;
  const auto blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  std::vector<std::string> warnings;
  ResolutionCache cache(blocker / "sub", [&](const std::string& w) { warnings.push_back(w); });
  CHECK_FALSE(cache.enabled());
  CHECK_FALSE(warnings.empty());
  const auto a = analyze(two_planes(), FieldSpec::rationals(), &cache);
  CHECK(a.table.at(2, 2) == 2);
}
