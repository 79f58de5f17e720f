#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lyutab::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kResourceBound = 3,
  kInvariantFailure = 4,
  kImplicationFailure = 5,
};

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheEnvVar = "LYUTAB_CACHE_DIR";

/// Runs one invocation. `args` excludes the program name. FILE may be a path, "-" for
/// `in`, or an inline JSON document.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& default_cache_dir = std::nullopt);

}  // namespace lyutab::cli
