#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> cache_dir;
  if (const char* env = std::getenv(lyutab::cli::kCacheEnvVar); env != nullptr && *env != '\0') cache_dir = env;
  return lyutab::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr, cache_dir);
}
