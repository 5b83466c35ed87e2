#pragma once

// Basis units of the order-n multicomplex algebra MC(n), indexed by bitmask:
// bit k of the mask stands for the generator i_{k+1}, so mask 0 is the real
// unit, mask 5 = i1*i3, and so on. Because the generators commute and each
// squares to -1, a product of two basis units is again a basis unit up to a
// sign determined by the generators the two masks share.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcjulia {

using UnitMask = std::uint32_t;

enum class UnitNature { Real, Imaginary, Hyperbolic };

struct SignedUnit {
  int sign = 1;  // +1 or -1
  UnitMask mask = 0;

  friend bool operator==(const SignedUnit&, const SignedUnit&) = default;
  SignedUnit negated() const { return {-sign, mask}; }
};

// Each shared generator contributes one factor i^2 = -1; the surviving
// generators are the symmetric difference of the two masks.
constexpr SignedUnit unit_product(UnitMask a, UnitMask b) {
  const int s = (std::popcount(a & b) & 1) ? -1 : 1;
  return {s, a ^ b};
}

constexpr SignedUnit unit_product(SignedUnit a, SignedUnit b) {
  SignedUnit p = unit_product(a.mask, b.mask);
  p.sign *= a.sign * b.sign;
  return p;
}

constexpr SignedUnit unit_product(SignedUnit a, SignedUnit b, SignedUnit c) {
  return unit_product(unit_product(a, b), c);
}

constexpr int unit_square_sign(UnitMask a) {
  return (std::popcount(a) & 1) ? -1 : 1;
}

constexpr UnitNature unit_nature(UnitMask a) {
  if (a == 0) return UnitNature::Real;
  return (std::popcount(a) & 1) ? UnitNature::Imaginary : UnitNature::Hyperbolic;
}

// Ordering used everywhere a unit list needs a canonical form:
// the real unit first, then imaginary units, then hyperbolic, ascending mask
// within each nature.
constexpr int nature_rank(UnitNature n) {
  switch (n) {
    case UnitNature::Real: return 0;
    case UnitNature::Imaginary: return 1;
    case UnitNature::Hyperbolic: return 2;
  }
  return 3;
}

constexpr bool unit_less(UnitMask a, UnitMask b) {
  const int ra = nature_rank(unit_nature(a));
  const int rb = nature_rank(unit_nature(b));
  return ra != rb ? ra < rb : a < b;
}

inline std::vector<UnitMask> enumerate_units(int order, UnitNature nature) {
  std::vector<UnitMask> out;
  for (UnitMask m = 0; m < (UnitMask{1} << order); ++m)
    if (unit_nature(m) == nature) out.push_back(m);
  return out;
}

// Display names. The eight low masks carry the traditional tricomplex names
// (i4 is the product i1*i2*i3, not a fourth generator); anything above mask 7
// prints as a plain integer.
inline std::string unit_name(UnitMask m) {
  switch (m) {
    case 0: return "1";
    case 1: return "i1";
    case 2: return "i2";
    case 3: return "j1";
    case 4: return "i3";
    case 5: return "j2";
    case 6: return "j3";
    case 7: return "i4";
    default: return std::to_string(m);
  }
}

inline std::optional<UnitMask> parse_unit(std::string_view s, int order) {
  const UnitMask limit = UnitMask{1} << order;
  static constexpr std::pair<std::string_view, UnitMask> kNames[] = {
      {"1", 0}, {"i1", 1}, {"i2", 2}, {"i3", 4}, {"i4", 7},
      {"j1", 3}, {"j2", 5}, {"j3", 6}};
  for (const auto& [name, mask] : kNames)
    if (s == name) return mask < limit ? std::optional<UnitMask>(mask) : std::nullopt;
  if (s.empty()) return std::nullopt;
  UnitMask value = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + static_cast<UnitMask>(ch - '0');
    if (value >= limit) return std::nullopt;
  }
  return value;
}

}  // namespace mcjulia
