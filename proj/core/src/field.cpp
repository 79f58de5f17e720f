#include "lyutab/field.hpp"

#include <stdexcept>

#include "lyutab/errors.hpp"

namespace lyutab {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw DomainError("characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
  return FieldSpec{p};
}

RationalField::Element RationalField::parse(const std::string& text) {
  Element out;
  if (out.set_str(text, 10) != 0) throw ParseError("not a rational literal: \"" + text + "\"");
  if (out.get_den() == 0) throw ParseError("zero denominator in \"" + text + "\"");
  out.canonicalize();
  return out;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (std::uint32_t{1} << 31)) {
    throw DomainError("characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw InvariantError("division by zero in prime field");
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a;
  std::uint64_t e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Element>(result);
}

PrimeField::Element PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::parse(const std::string& text) const {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a residue literal: \"" + text + "\"");
  }
  if (used != text.size() || v >= p_) throw ParseError("not a least residue: \"" + text + "\"");
  return static_cast<Element>(v);
}

}  // namespace lyutab
