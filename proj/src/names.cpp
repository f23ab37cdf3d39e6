#include <array>
#include <string_view>
#include <utility>

#include "clusterent/error.hpp"
#include "clusterent/region.hpp"

namespace clusterent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NegativeFidelity: return "NegativeFidelity";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::RegionUnreachable: return "RegionUnreachable";
    case ErrorCode::MutualExclusionBreach: return "MutualExclusionBreach";
    case ErrorCode::InvalidQuad: return "InvalidQuad";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RegionMismatch: return "RegionMismatch";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::pair<Region, std::string_view>, 10> kRegionNames{{
    {Region::APrime, "A'"},
    {Region::ADoublePrime, "A''"},
    {Region::ATriplePrime, "A'''"},
    {Region::B, "B"},
    {Region::C1, "C1"},
    {Region::C2, "C2"},
    {Region::D1Prime, "D1'"},
    {Region::D1DoublePrime, "D1''"},
    {Region::D2, "D2"},
    {Region::Biseparable, "Biseparable"},
}};

}  // namespace

std::string_view to_string(Region r) {
  for (const auto& [region, name] : kRegionNames) {
    if (region == r) return name;
  }
  return "?";
}

std::optional<Region> region_from_string(std::string_view s) {
  for (const auto& [region, name] : kRegionNames) {
    if (name == s) return region;
  }
  return std::nullopt;
}

std::string_view to_string(Half h) {
  switch (h) {
    case Half::First: return "first";
    case Half::Second: return "second";
    case Half::None: return "none";
  }
  return "?";
}

std::optional<Half> half_from_string(std::string_view s) {
  if (s == "first") return Half::First;
  if (s == "second") return Half::Second;
  if (s == "none") return Half::None;
  return std::nullopt;
}

}  // namespace clusterent
