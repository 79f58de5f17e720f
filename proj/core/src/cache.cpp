#include "lyutab/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <random>
#include <thread>

#include <json.hpp>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kHeaderTag = "lyutab-cache v1 ";

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

Json subset_json(Subset s) { return Json(to_vertices(s)); }

Subset subset_from(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("expected a vertex list");
  std::vector<int> vs;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("expected integer vertices");
    vs.push_back(v.get<int>());
  }
  return from_vertices(vs, n);
}

template <class K>
Json matrix_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (const auto& row : to_literals(m)) rows.push_back(row);
  return rows;
}

template <class K>
Matrix<K> matrix_from(const K& field, const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ParseError("matrix row count mismatch");
  Matrix<K> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_string()) throw ParseError("matrix entries must be string literals");
      m(r, c) = field.parse(j[r][c].get<std::string>());
    }
  }
  return m;
}

template <class K>
Json resolution_value(const FreeResolution<K>& res) {
  Json steps = Json::array();
  for (int t = 0; t <= res.length(); ++t) {
    Json degrees = Json::array();
    for (Subset d : res.degrees[t]) degrees.push_back(subset_json(d));
    Json step;
    step["degrees"] = degrees;
    step["differential"] = t > 0 ? matrix_json(res.differentials[t]) : Json::array();
    steps.push_back(step);
  }
  Json out;
  out["n"] = res.n;
  out["steps"] = steps;
  return out;
}

template <class K>
FreeResolution<K> resolution_from_value(const K& field, const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("steps")) throw ParseError("malformed resolution");
  FreeResolution<K> res;
  res.n = j["n"].get<int>();
  for (const auto& step : j["steps"]) {
    std::vector<Subset> degrees;
    for (const auto& d : step.at("degrees")) degrees.push_back(subset_from(d, res.n));
    const std::size_t t = res.degrees.size();
    Matrix<K> diff;
    if (t > 0) diff = matrix_from(field, step.at("differential"), res.degrees[t - 1].size(), degrees.size());
    res.degrees.push_back(std::move(degrees));
    res.differentials.push_back(std::move(diff));
  }
  res.check_invariants(field);
  return res;
}

template <class K>
Json module_value(const SquarefreeModule<K>& m) {
  const int n = m.vertex_count();
  Json fibers = Json::array();
  Json maps = Json::array();
  for (Subset f = 0; f < (Subset{1} << n); ++f) {
    if (m.dim(f) == 0) continue;
    fibers.push_back(Json{{"degree", subset_json(f)}, {"dim", m.dim(f)}});
  }
  for (Subset f = 0; f < (Subset{1} << n); ++f) {
    for (int j = 0; j < n; ++j) {
      if ((f >> j & 1u) || m.mult(f, j).empty()) continue;
      maps.push_back(Json{{"degree", subset_json(f)}, {"variable", j + 1}, {"matrix", matrix_json(m.mult(f, j))}});
    }
  }
  Json out;
  out["n"] = n;
  out["fibers"] = fibers;
  out["maps"] = maps;
  return out;
}

template <class K>
SquarefreeModule<K> module_from_value(const K& field, const Json& j) {
  if (!j.is_object() || !j.contains("n")) throw ParseError("malformed module");
  const int n = j["n"].get<int>();
  SquarefreeModule<K> m(n);
  for (const auto& fiber : j.at("fibers")) m.set_dim(subset_from(fiber.at("degree"), n), fiber.at("dim").get<std::size_t>());
  for (const auto& map : j.at("maps")) {
    const Subset f = subset_from(map.at("degree"), n);
    const int var = map.at("variable").get<int>();
    if (var < 1 || var > n || (f >> (var - 1) & 1u)) throw ParseError("bad multiplication variable");
    const Subset up = f | vertex_bit(var);
    m.set_mult(f, var - 1, matrix_from(field, map.at("matrix"), m.dim(up), m.dim(f)));
  }
  m.check_invariants(field);
  return m;
}

template <class Fn>
auto with_parse_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  } catch (const InvariantError& e) {
    throw ParseError(std::string("stored data violates an invariant: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ResolutionCache::ResolutionCache(std::filesystem::path dir, Warn warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    enabled_ = false;
    this->warn("cache directory " + dir_.string() + " unusable (" + ec.message() + "); continuing without cache");
  }
}

std::string ResolutionCache::key_material(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return canonical_json(ideal) + "|char=" + std::to_string(field.characteristic) + "|" + kEngineVersion;
}

std::string ResolutionCache::key_for(const SquarefreeIdeal& ideal, const FieldSpec& field) {
  return hex64(fnv1a64(key_material(ideal, field)));
}

std::filesystem::path ResolutionCache::path_for(const std::string& key) const { return dir_ / (key + ".lyc"); }

void ResolutionCache::warn(const std::string& message) const {
  if (warn_) warn_(message);
}

std::optional<std::string> ResolutionCache::load(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  const auto newline = content.find('\n');
  if (newline == std::string::npos || content.compare(0, kHeaderTag.size(), kHeaderTag) != 0 ||
      newline != kHeaderTag.size() + 16) {
    warn("cache entry " + key + " has a damaged header; recomputing");
    return std::nullopt;
  }
  const std::string stored = content.substr(kHeaderTag.size(), 16);
  std::string payload = content.substr(newline + 1);
  if (stored != hex64(fnv1a64(payload))) {
    warn("cache entry " + key + " failed its checksum; recomputing");
    return std::nullopt;
  }
  return payload;
}

void ResolutionCache::store(const std::string& key, const std::string& payload) {
  if (!enabled_) return;
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp." + hex64(std::hash<std::thread::id>{}(std::this_thread::get_id()) ^ (writes_++ << 32) ^
                        std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kHeaderTag << hex64(fnv1a64(payload)) << '\n' << payload;
    out.flush();
    if (!out) {
      enabled_ = false;
      warn("could not write cache entry " + tmp.string() + "; continuing without cache");
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    enabled_ = false;
    warn("could not publish cache entry " + target.string() + " (" + ec.message() + "); continuing without cache");
    std::filesystem::remove(tmp, ec);
  }
}

template <class K>
std::string resolution_to_json(const FreeResolution<K>& res) {
  return resolution_value(res).dump();
}

template <class K>
FreeResolution<K> resolution_from_json(const K& field, std::string_view text) {
  return with_parse_errors([&] { return resolution_from_value(field, Json::parse(text)); });
}

template <class K>
std::string module_to_json(const SquarefreeModule<K>& module) {
  return module_value(module).dump();
}

template <class K>
SquarefreeModule<K> module_from_json(const K& field, std::string_view text) {
  return with_parse_errors([&] { return module_from_value(field, Json::parse(text)); });
}

template <class K>
std::string first_level_payload(const std::string& key_material, const FreeResolution<K>& res,
                                const std::vector<SquarefreeModule<K>>& ext) {
  Json out;
  out["key"] = key_material;
  out["resolution"] = resolution_value(res);
  Json modules = Json::array();
  for (const auto& m : ext) modules.push_back(module_value(m));
  out["ext"] = modules;
  return out.dump();
}

template <class K>
void read_first_level_payload(const K& field, std::string_view payload, const std::string& key_material,
                              FreeResolution<K>& res, std::vector<SquarefreeModule<K>>& ext) {
  with_parse_errors([&] {
    const Json j = Json::parse(payload);
    if (j.at("key").get<std::string>() != key_material) throw ParseError("cache entry belongs to another key");
    auto parsed_res = resolution_from_value(field, j.at("resolution"));
    std::vector<SquarefreeModule<K>> parsed_ext;
    for (const auto& m : j.at("ext")) parsed_ext.push_back(module_from_value(field, m));
    if (parsed_ext.size() != static_cast<std::size_t>(parsed_res.n) + 1) throw ParseError("wrong number of Ext modules");
    res = std::move(parsed_res);
    ext = std::move(parsed_ext);
    return 0;
  });
}

#define LYUTAB_CACHE_INSTANTIATE(K)                                                                         \
  template std::string resolution_to_json<K>(const FreeResolution<K>&);                                     \
  template FreeResolution<K> resolution_from_json<K>(const K&, std::string_view);                          \
  template std::string module_to_json<K>(const SquarefreeModule<K>&);                                       \
  template SquarefreeModule<K> module_from_json<K>(const K&, std::string_view);                            \
  template std::string first_level_payload<K>(const std::string&, const FreeResolution<K>&,                \
                                              const std::vector<SquarefreeModule<K>>&);                     \
  template void read_first_level_payload<K>(const K&, std::string_view, const std::string&, FreeResolution<K>&, \
                                            std::vector<SquarefreeModule<K>>&);

LYUTAB_CACHE_INSTANTIATE(RationalField)
LYUTAB_CACHE_INSTANTIATE(PrimeField)

}  // namespace lyutab
