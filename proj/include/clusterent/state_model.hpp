#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "clusterent/graph_basis.hpp"
#include "clusterent/region.hpp"

namespace clusterent {

/// Probabilities of the 16 cluster basis states, indexed by basis_index().
/// Always nonnegative and normalized; construct through validate().
class FVector {
 public:
  /// Clamps entries in [-1e-12, 0) to zero and accepts sums within 1e-8 of
  /// one, dividing by the sum unless it is already within 1e-14. Throws
  /// NegativeEntry / NotNormalized otherwise.
  static FVector validate(std::span<const double> raw);

  static FVector uniform();
  /// Pure cluster basis state |Cl_label>.
  static FVector basis(int label);

  double operator[](int a) const { return f_[static_cast<std::size_t>(a)]; }
  const std::array<double, kBasisSize>& values() const { return f_; }

  bool operator==(const FVector&) const = default;

 private:
  FVector() = default;
  std::array<double, kBasisSize> f_{};
};

inline constexpr double kNormalizationTol = 1e-8;
inline constexpr double kNegativeTol = 1e-12;

/// Block k = 2*alpha + delta gathers the four entries with fixed (alpha, delta).
/// Members are listed in block-local order j = 2*beta + gamma.
std::array<int, 4> block_members(int block);
constexpr int block_of(int a) { return 2 * (a >> 3) + (a & 1); }

/// p[k] is the maximum of block k and p[4 + k] the sum of its other three
/// entries. argmax holds the block-local index realizing each maximum, ties
/// going to the smallest (beta, gamma).
struct BlockParams {
  std::array<double, 8> p{};
  std::array<int, 4> argmax{};

  /// Basis index of the maximal entry of a block.
  int max_index(int block) const;
};

BlockParams block_params(const FVector& f);

/// Four parameters governing one half of the criteria, named after the first
/// half. The second half plays the same roles with (p1, p2, p5, p6).
struct Quad {
  double p0 = 0, p3 = 0, p4 = 0, p7 = 0;
};

Quad first_quad(const BlockParams& bp);
Quad second_quad(const BlockParams& bp);

/// Swaps blocks (0,0)<->(0,1) and (1,1)<->(1,0) by flipping delta. The
/// criteria are invariant under it and it exchanges the two halves.
FVector flip_delta(const FVector& f);

/// Swaps blocks (0,0)<->(1,1) and (0,1)<->(1,0) by flipping alpha and delta;
/// exchanges (p0, p4) with (p3, p7) inside each half.
FVector flip_alpha_delta(const FVector& f);

/// A cluster-diagonal state whose first-half block parameters are exactly the
/// quad: residuals split evenly over the three non-max entries, the remaining
/// mass spread evenly over blocks (0,1) and (1,0). The second half of the
/// result never violates the criteria.
FVector realize_quad(const Quad& q);

struct NoiseSpec {
  std::array<double, 4> q{};
};

/// Independent phase flips with probabilities q_i applied to |Cl_0000>.
FVector dephasing_state(const NoiseSpec& spec);

/// Targets a region for rejection sampling. Without explicit concentration a
/// per-region Dirichlet concentration is used that makes the target common.
struct RegionBias {
  Region target = Region::B;
  Half half = Half::First;
  std::optional<std::array<double, kBasisSize>> concentration;
};

inline constexpr std::int64_t kRejectionBudget = 1'000'000;

/// Draws from the flat Dirichlet on the 15-simplex, or with a bias from a
/// Dirichlet until classify() lands in the requested region and half.
/// Deterministic in the seed.
FVector sample_random(std::uint64_t seed, const std::optional<RegionBias>& bias = std::nullopt);

/// Default concentration for rejection sampling of a first- or second-half region.
std::array<double, kBasisSize> default_concentration(Region target, Half half);

}  // namespace clusterent
