#include "clusterent/state_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "clusterent/classify.hpp"
#include "clusterent/error.hpp"

namespace clusterent {

namespace {
constexpr double kRenormalizeSlack = 1e-14;
}  // namespace

FVector FVector::validate(std::span<const double> raw) {
  if (raw.size() != kBasisSize) {
    throw Error(ErrorCode::NotNormalized,
                "expected 16 entries, got " + std::to_string(raw.size()));
  }
  FVector out;
  double sum = 0;
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    const double x = raw[a];
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::NotNormalized, "entry " + std::to_string(a) + " is not finite");
    }
    if (x < -kNegativeTol) {
      throw Error(ErrorCode::NegativeEntry,
                  "entry " + std::to_string(a) + " is " + std::to_string(x));
    }
    out.f_[a] = x < 0 ? 0.0 : x;
    sum += out.f_[a];
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw Error(ErrorCode::NotNormalized, "entries sum to " + std::to_string(sum));
  }
  // Sums already within rounding of one are left alone so validate() is
  // idempotent and permutations keep every bit.
  if (std::abs(sum - 1.0) > kRenormalizeSlack) {
    for (double& x : out.f_) x /= sum;
  }
  return out;
}

FVector FVector::uniform() {
  FVector out;
  out.f_.fill(1.0 / kBasisSize);
  return out;
}

FVector FVector::basis(int label) {
  FVector out;
  out.f_.at(static_cast<std::size_t>(label)) = 1.0;
  return out;
}

std::array<int, 4> block_members(int block) {
  const int alpha = block >> 1;
  const int delta = block & 1;
  return {basis_index(alpha, 0, 0, delta), basis_index(alpha, 0, 1, delta),
          basis_index(alpha, 1, 0, delta), basis_index(alpha, 1, 1, delta)};
}

int BlockParams::max_index(int block) const {
  return block_members(block)[static_cast<std::size_t>(argmax[static_cast<std::size_t>(block)])];
}

BlockParams block_params(const FVector& f) {
  BlockParams bp;
  for (int k = 0; k < 4; ++k) {
    const auto members = block_members(k);
    int best = 0;
    double total = 0;
    for (int j = 0; j < 4; ++j) {
      const double x = f[members[static_cast<std::size_t>(j)]];
      total += x;
      if (x > f[members[static_cast<std::size_t>(best)]]) best = j;
    }
    const auto uk = static_cast<std::size_t>(k);
    bp.argmax[uk] = best;
    bp.p[uk] = f[members[static_cast<std::size_t>(best)]];
    // Sum the three others directly rather than total - max, so the residual
    // of a block with a single nonzero entry is exactly zero.
    double rest = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != best) rest += f[members[static_cast<std::size_t>(j)]];
    }
    bp.p[uk + 4] = rest;
  }
  return bp;
}

Quad first_quad(const BlockParams& bp) { return {bp.p[0], bp.p[3], bp.p[4], bp.p[7]}; }
Quad second_quad(const BlockParams& bp) { return {bp.p[1], bp.p[2], bp.p[5], bp.p[6]}; }

namespace {

FVector permuted(const FVector& f, int mask) {
  std::array<double, kBasisSize> out{};
  for (int a = 0; a < kBasisSize; ++a) out[static_cast<std::size_t>(a)] = f[a ^ mask];
  return FVector::validate(out);
}

}  // namespace

FVector flip_delta(const FVector& f) { return permuted(f, 0b0001); }
FVector flip_alpha_delta(const FVector& f) { return permuted(f, 0b1001); }

FVector realize_quad(const Quad& q) {
  check_quad(q);
  std::array<double, kBasisSize> f{};
  const auto b00 = block_members(0);
  const auto b11 = block_members(3);
  f[static_cast<std::size_t>(b00[0])] = q.p0;
  f[static_cast<std::size_t>(b11[0])] = q.p3;
  for (int j = 1; j < 4; ++j) {
    f[static_cast<std::size_t>(b00[static_cast<std::size_t>(j)])] = q.p4 / 3;
    f[static_cast<std::size_t>(b11[static_cast<std::size_t>(j)])] = q.p7 / 3;
  }
  const double rest = std::max(0.0, 1.0 - q.p0 - q.p3 - q.p4 - q.p7);
  for (int k : {1, 2}) {
    for (int a : block_members(k)) f[static_cast<std::size_t>(a)] = rest / 8;
  }
  return FVector::validate(f);
}

FVector dephasing_state(const NoiseSpec& spec) {
  for (double q : spec.q) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorCode::DomainError, "phase-flip probability outside [0, 1]");
    }
  }
  std::array<double, kBasisSize> f{};
  for (int a = 0; a < kBasisSize; ++a) {
    double w = 1;
    for (int i = 0; i < kQubits; ++i) {
      const bool flipped = (a >> (kQubits - 1 - i)) & 1;
      const double q = spec.q[static_cast<std::size_t>(i)];
      w *= flipped ? q : 1 - q;
    }
    f[static_cast<std::size_t>(a)] = w;
  }
  return FVector::validate(f);
}

std::array<double, kBasisSize> default_concentration(Region target, Half half) {
  // Weights on the block (0,0) max, block (1,1) max, the other entries of
  // those two blocks, and the off blocks.
  struct Shape {
    double m0, m3, r4, r7, off;
  };
  Shape s{1, 1, 1, 1, 1};
  switch (target) {
    case Region::APrime: s = {8, 5, 0.5, 0.5, 0.5}; break;
    case Region::ADoublePrime: s = {6, 6, 2.5, 0.3, 0.3}; break;
    case Region::ATriplePrime: s = {5, 8, 3, 0.3, 0.3}; break;
    case Region::B: s = {8, 4, 0.3, 1.5, 0.3}; break;
    case Region::C1: s = {6, 3, 0.3, 2.5, 0.3}; break;
    case Region::C2: s = {6, 1.5, 0.3, 1.2, 0.8}; break;
    case Region::D1Prime: s = {1.5, 6, 1.2, 0.3, 0.8}; break;
    default: break;
  }
  std::array<double, kBasisSize> c{};
  c.fill(s.off);
  const auto b00 = block_members(0);
  const auto b11 = block_members(3);
  for (int j = 0; j < 4; ++j) {
    c[static_cast<std::size_t>(b00[static_cast<std::size_t>(j)])] = j == 0 ? s.m0 : s.r4;
    c[static_cast<std::size_t>(b11[static_cast<std::size_t>(j)])] = j == 0 ? s.m3 : s.r7;
  }
  if (half == Half::Second) {
    std::array<double, kBasisSize> flipped{};
    for (int a = 0; a < kBasisSize; ++a) {
      flipped[static_cast<std::size_t>(a)] = c[static_cast<std::size_t>(a ^ 1)];
    }
    return flipped;
  }
  return c;
}

namespace {

FVector draw_dirichlet(std::mt19937_64& rng, const std::array<double, kBasisSize>& alpha) {
  std::array<double, kBasisSize> g{};
  double sum = 0;
  do {
    sum = 0;
    for (std::size_t a = 0; a < kBasisSize; ++a) {
      std::gamma_distribution<double> gamma(alpha[a], 1.0);
      g[a] = gamma(rng);
      sum += g[a];
    }
  } while (!(sum > 0));
  for (double& x : g) x /= sum;
  return FVector::validate(g);
}

}  // namespace

FVector sample_random(std::uint64_t seed, const std::optional<RegionBias>& bias) {
  std::mt19937_64 rng(seed);
  if (!bias) {
    std::array<double, kBasisSize> flat{};
    flat.fill(1.0);
    return draw_dirichlet(rng, flat);
  }
  if (bias->target == Region::D1DoublePrime || bias->target == Region::D2) {
    throw Error(ErrorCode::DomainError,
                "D1'' and D2 are biseparable sub-labels; target Biseparable instead");
  }
  const Half want_half = bias->target == Region::Biseparable ? Half::None : bias->half;
  const auto alpha = bias->concentration.value_or(default_concentration(bias->target, want_half));
  for (std::int64_t draw = 0; draw < kRejectionBudget; ++draw) {
    FVector f = draw_dirichlet(rng, alpha);
    const RegionLabel label = classify(f);
    if (label.region == bias->target && label.half == want_half) return f;
  }
  throw Error(ErrorCode::RegionUnreachable,
              "no sample in region " + std::string(to_string(bias->target)) + " after " +
                  std::to_string(kRejectionBudget) + " draws");
}

}  // namespace clusterent
