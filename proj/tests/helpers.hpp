#pragma once

#include <array>
#include <initializer_list>
#include <optional>
#include <utility>

#include "clusterent/error.hpp"

#include "clusterent/state_model.hpp"

namespace clusterent::testing {

/// FVector from sparse (index, value) pairs.
inline FVector sparse(std::initializer_list<std::pair<int, double>> entries) {
  std::array<double, kBasisSize> raw{};
  for (const auto& [a, v] : entries) raw[static_cast<std::size_t>(a)] = v;
  return FVector::validate(raw);
}

/// Error code thrown by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<ErrorCode> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace clusterent::testing
