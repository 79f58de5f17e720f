#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using lyutab::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = "",
              const std::optional<std::string>& cache_dir = std::nullopt) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err, cache_dir);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LYUTAB_DATA_DIR) + "/" + name; }

nlohmann::json as_json(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("table") {
  auto r = invoke({"table", data("two_planes.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1 0\n  0 0\n    2\n");

  r = invoke({"table", data("irrelevant.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");

  r = invoke({"table", data("nine_vars.json"), "--char", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = as_json(r);
  CHECK(j["d"] == 7);
  CHECK(j["trivial"] == true);
  CHECK(j["field"]["characteristic"] == 2);

  r = invoke({"table", "-"}, R"({"n":4,"primary_components":[[1,2],[3,4]]})");
  CHECK(r.out == "0 1 0\n  0 0\n    2\n");
  r = invoke({"table", R"({"n":4,"primary_components":[[1,2],[3,4]]})"});
  CHECK(r.out == "0 1 0\n  0 0\n    2\n");
}

TEST_CASE("classify") {
  auto r = invoke({"classify", data("tree.json"), "--format", "json"});
  CHECK(r.code == 0);
  auto j = as_json(r);
  CHECK(j["classification"]["seq_cm_homological"] == true);
  CHECK(j["classification"]["seq_cm_duval"] == true);
  CHECK(j["trivial"] == true);
  for (const auto& [name, outcome] : j["checks"].items()) CHECK(outcome != "fail");

  r = invoke({"classify", data("two_planes.json"), "--format", "json"});
  j = as_json(r);
  CHECK(j["classification"]["canonically_cm"] == true);
  CHECK(j["classification"]["seq_cm_homological"] == false);
  CHECK(j["table"] == nlohmann::json::parse("[[0,1,0],[0,0,0],[0,0,2]]"));

  r = invoke({"classify", data("nine_vars.json"), "--format", "json"});
  j = as_json(r);
  CHECK(j["classification"]["seq_cm_homological"] == false);
  CHECK(j["trivial"] == true);
  CHECK(j["classification"]["lc_nonvanishing"] == nlohmann::json::parse("[2,3,4,5]"));

  r = invoke({"classify", data("tree.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("sequentially cohen-macaulay: yes") != std::string::npos);
}

TEST_CASE("characteristic changes the projective plane report") {
  const auto q = invoke({"classify", data("rp2.json"), "--char", "0", "--format", "json"});
  const auto f2 = invoke({"classify", data("rp2.json"), "--char", "2", "--format", "json"});
  CHECK(q.code == 0);
  CHECK(f2.code == 0);
  CHECK(as_json(q)["classification"]["cohen_macaulay"] == true);
  CHECK(as_json(f2)["classification"]["cohen_macaulay"] == false);
  CHECK(q.out != f2.out);
}

TEST_CASE("duals") {
  const auto r = invoke({"duals", data("two_planes.json"), "--format", "json"});
  CHECK(r.code == 0);
  const auto j = as_json(r);
  CHECK(j["primary_components"] == nlohmann::json::parse("[[1,2],[3,4]]"));
  CHECK(j["alexander_dual"]["generators"] == nlohmann::json::parse("[[1,2],[3,4]]"));
  CHECK(j["complex"]["facets"] == nlohmann::json::parse("[[1,2],[3,4]]"));

  const auto zero = invoke({"duals", R"({"n":2,"generators":[]})", "--format", "json"});
  CHECK(zero.code == 0);
  CHECK(as_json(zero)["alexander_dual"].is_null());
}

TEST_CASE("verify") {
  auto r = invoke({"verify", "--family", "nonpure-shellable", "--n", "6", "--count", "100", "--seed", "42",
                   "--format", "json"});
  CHECK(r.code == 0);
  auto j = as_json(r);
  CHECK(j["summary"]["seq_cm"] == 100);
  CHECK(j["summary"]["trivial"] == 100);
  CHECK(j["checks"]["shelling_certificate"]["pass"] == 100);

  r = invoke({"verify", "--family", "random", "--n", "5", "--count", "200", "--seed", "7", "--format", "json"});
  CHECK(r.code == 0);
  j = as_json(r);
  for (const char* name : {"euler_characteristic", "highest_equals_hh_components", "seq_cm_oracles_agree"}) {
    CHECK(j["checks"][name]["pass"] == 200);
  }

  r = invoke({"verify", "--family", "forest", "--n", "5", "--count", "50", "--seed", "1", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(as_json(r)["summary"]["trivial"] == 50);

  SUBCASE("output does not depend on the worker count") {
    const std::vector<std::string> base{"verify", "--family", "random", "--n", "5", "--count", "60", "--seed", "3"};
    auto one = base;
    one.insert(one.end(), {"--jobs", "1"});
    auto four = base;
    four.insert(four.end(), {"--jobs", "4"});
    CHECK(invoke(one).out == invoke(four).out);
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"table", "/nonexistent/input.json"}).code == 2);
  CHECK(invoke({"table", "{not json"}).code == 2);
  CHECK(invoke({"table", R"({"n":3,"generators":[[]]})"}).code == 2);
  CHECK(invoke({"table", data("two_planes.json"), "--char", "4"}).code == 2);
  CHECK(invoke({"table", data("two_planes.json"), "--format", "xml"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"verify", "--family", "random", "--n", "4", "--count", "3"}).code == 2);
  CHECK(invoke({"verify", "--family", "cubes", "--seed", "1"}).code == 2);
  CHECK(invoke({"table", R"({"n":25,"generators":[[1]]})"}).code == 3);
  CHECK(invoke({"table", R"({"n":17,"generators":[[1]]})"}).code == 3);
  CHECK(invoke({"verify", "--n", "9", "--seed", "1"}).code == 3);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("cache: cold and warm runs print identical bytes") {
  std::random_device rd;
  const auto dir = fs::temp_directory_path() / ("lyutab-cli-" + std::to_string(rd()));
  const auto cold = invoke({"table", data("nine_vars.json")}, "", dir.string());
  CHECK(cold.code == 0);
  CHECK_FALSE(fs::is_empty(dir));
  const auto warm = invoke({"table", data("nine_vars.json")}, "", dir.string());
  const auto off = invoke({"table", data("nine_vars.json"), "--no-cache"}, "", dir.string());
  CHECK(cold.out == warm.out);
  CHECK(cold.out == off.out);
  CHECK(warm.err.empty());

  const auto cls_cold = invoke({"classify", data("two_planes.json"), "--format", "json", "--cache", dir.string()});
  const auto cls_warm = invoke({"classify", data("two_planes.json"), "--format", "json", "--cache", dir.string()});
  CHECK(cls_cold.out == cls_warm.out);
  fs::remove_all(dir);
}
