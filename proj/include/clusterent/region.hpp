#pragma once

#include <optional>
#include <string_view>

namespace clusterent {

/// Entanglement regions of one parameter half. Biseparable is only used as a
/// final verdict once both halves have been checked.
enum class Region {
  APrime,
  ADoublePrime,
  ATriplePrime,
  B,
  C1,
  C2,
  D1Prime,
  D1DoublePrime,
  D2,
  Biseparable,
};

enum class Half { First, Second, None };

inline constexpr Region kEntangledRegions[] = {
    Region::APrime, Region::ADoublePrime, Region::ATriplePrime, Region::B,
    Region::C1,     Region::C2,           Region::D1Prime,
};

constexpr bool is_entangled(Region r) {
  return r != Region::D1DoublePrime && r != Region::D2 && r != Region::Biseparable;
}

/// "A'", "A''", "A'''", "B", "C1", "C2", "D1'", "D1''", "D2", "Biseparable".
std::string_view to_string(Region r);
std::optional<Region> region_from_string(std::string_view s);

std::string_view to_string(Half h);
std::optional<Half> half_from_string(std::string_view s);

}  // namespace clusterent
