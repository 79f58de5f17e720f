#pragma once

#include <stdexcept>
#include <string>

namespace lyutab {

/// Malformed input document or out-of-range index.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called outside its domain (void complex, zero ideal, face not in complex, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input exceeds an engine bound (vertex count, corpus size).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (d^2 != 0, non-commuting squares, ...).
/// Always a bug in the engine, never a property of the input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lyutab
