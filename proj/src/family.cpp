#include "shiftsum/family.hpp"

#include <charconv>

#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"

namespace shiftsum {

FamilySpec FamilySpec::unit() { return {FamilyKind::Unit, 0, 1, true}; }

FamilySpec FamilySpec::real_character(std::int64_t d) {
  if (d == 0) throw ConfigError("RealCharacter: discriminant D must be nonzero");
  // (k^2 | n) is the principal character mod k: L(g, s) would have a pole at s = 1.
  if (is_perfect_square(d))
    throw ConfigError("RealCharacter: D = " + std::to_string(d) +
                      " is a perfect square (principal character)");
  return {FamilyKind::RealCharacter, d, 1, false};
}

FamilySpec FamilySpec::hecke_delta() { return {FamilyKind::HeckeDelta, 0, 2, false}; }

FamilySpec FamilySpec::parse(const std::string& text) {
  if (text == "unit") return unit();
  if (text == "delta" || text == "hecke") return hecke_delta();
  for (const std::string prefix : {"kronecker:", "character:"}) {
    if (text.rfind(prefix, 0) != 0) continue;
    const std::string rest = text.substr(prefix.size());
    std::int64_t d = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
      throw ConfigError("bad discriminant in family spec '" + text + "'");
    return real_character(d);
  }
  throw ConfigError("unknown family '" + text + "' (expected unit, kronecker:<D>, delta)");
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::Unit: return "unit";
    case FamilyKind::RealCharacter: return "kronecker:" + std::to_string(discriminant);
    case FamilyKind::HeckeDelta: return "delta";
  }
  return "?";
}

}  // namespace shiftsum
