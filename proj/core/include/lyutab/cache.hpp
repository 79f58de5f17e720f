#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyutab/complex.hpp"
#include "lyutab/field.hpp"
#include "lyutab/sqmod.hpp"

namespace lyutab {

/// Bumped whenever a change could alter cached resolutions or Ext modules.
inline constexpr const char* kEngineVersion = "lyutab-engine-1";

std::uint64_t fnv1a64(std::string_view bytes);

/// On-disk store of first-level results (resolution of R/I and its Ext modules), one file
/// per key. Files carry a checksum line; damaged or mismatched entries are reported through
/// the warning callback and treated as misses. Safe to share between threads if the warning
/// callback is. Writes go through a temporary file and a
/// rename so concurrent readers never observe partial entries. An I/O failure disables the
/// cache for the rest of the run.
class ResolutionCache {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit ResolutionCache(std::filesystem::path dir, Warn warn = {});

  /// Hex digest of (canonical ideal, characteristic, engine version).
  static std::string key_for(const SquarefreeIdeal& ideal, const FieldSpec& field);
  /// The material hashed into the key; stored inside the entry to rule out collisions.
  static std::string key_material(const SquarefreeIdeal& ideal, const FieldSpec& field);

  std::filesystem::path path_for(const std::string& key) const;

  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload);

  bool enabled() const { return enabled_.load(); }
  void warn(const std::string& message) const;

 private:
  std::filesystem::path dir_;
  Warn warn_;
  std::atomic<bool> enabled_{true};
  std::atomic<std::uint64_t> writes_{0};
};

/// Exact JSON forms; matrices are arrays of string literals.
template <class K>
std::string resolution_to_json(const FreeResolution<K>& res);
template <class K>
FreeResolution<K> resolution_from_json(const K& field, std::string_view text);
template <class K>
std::string module_to_json(const SquarefreeModule<K>& module);
template <class K>
SquarefreeModule<K> module_from_json(const K& field, std::string_view text);

/// Cache payload for one ring: key material, resolution, Ext modules E^0..E^n.
template <class K>
std::string first_level_payload(const std::string& key_material, const FreeResolution<K>& res,
                                const std::vector<SquarefreeModule<K>>& ext);
/// Throws ParseError when the payload is malformed or belongs to another key.
template <class K>
void read_first_level_payload(const K& field, std::string_view payload, const std::string& key_material,
                              FreeResolution<K>& res, std::vector<SquarefreeModule<K>>& ext);

}  // namespace lyutab
