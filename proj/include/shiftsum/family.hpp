#pragma once

#include <cstdint>
#include <string>

namespace shiftsum {

enum class FamilyKind : std::uint64_t { Unit = 0, RealCharacter = 1, HeckeDelta = 2 };

// Inner function g of f = g * 1.
//   Unit           g(n) = 1                      (k = 1, L(g,s) = zeta(s) has a pole)
//   RealCharacter  g(n) = (D | n), Kronecker     (k = 1)
//   HeckeDelta     g(n) = tau(n) / n^{11/2}      (k = 2)
struct FamilySpec {
  FamilyKind kind = FamilyKind::Unit;
  std::int64_t discriminant = 0;  // only meaningful for RealCharacter
  int degree_k = 1;
  bool has_pole_at_one = true;

  static FamilySpec unit();
  static FamilySpec real_character(std::int64_t d);
  static FamilySpec hecke_delta();

  // "unit", "kronecker:<D>" (alias "character:<D>"), "delta" (alias "hecke").
  static FamilySpec parse(const std::string& text);
  std::string to_string() const;

  bool integer_valued() const { return kind != FamilyKind::HeckeDelta; }
  bool real_valued() const { return true; }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

}  // namespace shiftsum
