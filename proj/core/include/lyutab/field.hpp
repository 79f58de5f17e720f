#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace lyutab {

/// Coefficient field chosen at run time: characteristic 0 (the rationals) or a prime p < 2^31.
struct FieldSpec {
  std::uint64_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  /// Throws DomainError unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t value);

/// The rationals with GMP arbitrary precision. Elements are kept in canonical (reduced) form.
class RationalField {
 public:
  using Element = mpq_class;

  static constexpr std::uint64_t characteristic() { return 0; }
  static Element zero() { return Element(0); }
  static Element one() { return Element(1); }
  static bool is_zero(const Element& a) { return sgn(a) == 0; }
  static Element add(const Element& a, const Element& b) { return a + b; }
  static Element sub(const Element& a, const Element& b) { return a - b; }
  static Element mul(const Element& a, const Element& b) { return a * b; }
  static Element div(const Element& a, const Element& b) { return a / b; }
  static Element neg(const Element& a) { return -a; }
  static Element from_int(long long v) { return Element(static_cast<long>(v)); }
  /// "p" or "p/q"
  static std::string to_string(const Element& a) { return a.get_str(); }
  static Element parse(const std::string& text);
};

/// Integers modulo a prime p < 2^31, stored as least non-negative residues.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint64_t characteristic() const { return p_; }
  static Element zero() { return 0; }
  static Element one() { return 1; }
  static bool is_zero(Element a) { return a == 0; }
  Element add(Element a, Element b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element from_int(long long v) const;
  static std::string to_string(Element a) { return std::to_string(a); }
  Element parse(const std::string& text) const;

 private:
  std::uint32_t p_;
};

/// Calls fn(RationalField{}) or fn(PrimeField{p}) according to the spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.characteristic == 0) return fn(RationalField{});
  return fn(PrimeField(static_cast<std::uint32_t>(spec.characteristic)));
}

}  // namespace lyutab
