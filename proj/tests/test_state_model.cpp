#include <doctest.h>

#include <cmath>
#include <vector>

#include "clusterent/classify.hpp"
#include "clusterent/error.hpp"
#include "clusterent/state_model.hpp"
#include "helpers.hpp"

using namespace clusterent;
using testing::sparse;
using testing::thrown_code;

TEST_CASE("validate clamps rounding negatives and renormalizes") {
  std::array<double, 16> raw{};
  raw[0] = 1.0 + 5e-9;
  raw[3] = -5e-13;
  const FVector f = FVector::validate(raw);
  CHECK(f[3] == 0.0);
  CHECK(f[0] == 1.0);
}

TEST_CASE("validate rejects malformed input") {
  std::array<double, 16> raw{};
  raw[0] = 1.1;
  raw[1] = -0.1;
  CHECK(thrown_code([&] { FVector::validate(raw); }) == ErrorCode::NegativeEntry);

  raw = {};
  raw[0] = 0.9;
  CHECK(thrown_code([&] { FVector::validate(raw); }) == ErrorCode::NotNormalized);

  raw[0] = std::nan("");
  CHECK(thrown_code([&] { FVector::validate(raw); }) == ErrorCode::NotNormalized);

  const std::vector<double> short_input(15, 1.0 / 15);
  CHECK(thrown_code([&] { FVector::validate(short_input); }) == ErrorCode::NotNormalized);
}

TEST_CASE("validate is the identity on valid vectors") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FVector f = sample_random(seed);
    CHECK(FVector::validate(f.values()) == f);
  }
}

TEST_CASE("block membership") {
  CHECK(block_members(0) == std::array<int, 4>{0, 2, 4, 6});
  CHECK(block_members(1) == std::array<int, 4>{1, 3, 5, 7});
  CHECK(block_members(2) == std::array<int, 4>{8, 10, 12, 14});
  CHECK(block_members(3) == std::array<int, 4>{9, 11, 13, 15});
  for (int a = 0; a < 16; ++a) {
    bool found = false;
    for (int a2 : block_members(block_of(a))) found = found || a2 == a;
    CHECK(found);
  }
}

TEST_CASE("block parameters of the uniform state") {
  const BlockParams bp = block_params(FVector::uniform());
  for (int k = 0; k < 4; ++k) {
    CHECK(bp.p[static_cast<std::size_t>(k)] == doctest::Approx(1.0 / 16));
    CHECK(bp.p[static_cast<std::size_t>(k + 4)] == doctest::Approx(3.0 / 16));
    CHECK(bp.argmax[static_cast<std::size_t>(k)] == 0);
  }
}

TEST_CASE("block parameters of the pure cluster state") {
  const BlockParams bp = block_params(FVector::basis(0));
  CHECK(bp.p == std::array<double, 8>{1, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("argmax ties go to the smallest (beta, gamma)") {
  const FVector f = sparse({{2, 0.25}, {6, 0.25}, {11, 0.5}});
  const BlockParams bp = block_params(f);
  CHECK(bp.max_index(0) == 2);
  CHECK(bp.p[0] == 0.25);
  CHECK(bp.p[4] == 0.25);
  CHECK(bp.max_index(3) == 11);
}

TEST_CASE("residuals of single-entry blocks are exactly zero") {
  const FVector f = sparse({{0, 0.4}, {9, 0.25}, {11, 0.2}, {2, 0.15}});
  const BlockParams bp = block_params(f);
  CHECK(bp.p[0] == 0.4);
  CHECK(bp.p[3] == 0.25);
  CHECK(bp.p[4] == 0.15);
  CHECK(bp.p[7] == 0.2);
  CHECK(bp.p[1] == 0.0);
  CHECK(bp.p[5] == 0.0);
}

TEST_CASE("block parameter invariants on random states") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const FVector f = sample_random(seed);
    const BlockParams bp = block_params(f);
    double total = 0;
    for (double x : bp.p) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 4; ++k) {
      const double mx = bp.p[static_cast<std::size_t>(k)];
      const double rest = bp.p[static_cast<std::size_t>(k + 4)];
      CHECK(rest <= 3 * mx + 1e-15);
      for (int a : block_members(k)) CHECK(f[a] <= mx);
    }
  }
}

TEST_CASE("flip_delta exchanges the halves") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const FVector f = sample_random(seed);
    const BlockParams a = block_params(f);
    const BlockParams b = block_params(flip_delta(f));
    const Quad fa = first_quad(a), sb = second_quad(b);
    CHECK(fa.p0 == sb.p0);
    CHECK(fa.p3 == sb.p3);
    CHECK(fa.p4 == sb.p4);
    CHECK(fa.p7 == sb.p7);
    CHECK(flip_delta(flip_delta(f)) == f);
  }
}

TEST_CASE("flip_alpha_delta swaps (p0, p4) with (p3, p7)") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const FVector f = sample_random(seed);
    const Quad a = first_quad(block_params(f));
    const Quad b = first_quad(block_params(flip_alpha_delta(f)));
    CHECK(a.p0 == b.p3);
    CHECK(a.p3 == b.p0);
    CHECK(a.p4 == b.p7);
    CHECK(a.p7 == b.p4);
  }
}

TEST_CASE("realize_quad reproduces the quad") {
  const Quad q{0.4, 0.25, 0.15, 0.2};
  const Quad r = first_quad(block_params(realize_quad(q)));
  CHECK(r.p0 == doctest::Approx(q.p0).epsilon(1e-15));
  CHECK(r.p3 == doctest::Approx(q.p3).epsilon(1e-15));
  CHECK(r.p4 == doctest::Approx(q.p4).epsilon(1e-15));
  CHECK(r.p7 == doctest::Approx(q.p7).epsilon(1e-15));
  CHECK(thrown_code([] { realize_quad({0.1, 0.1, 0.5, 0.0}); }) == ErrorCode::InvalidQuad);
}

TEST_CASE("dephasing at q = 0.1 on every qubit") {
  const FVector f = dephasing_state({{0.1, 0.1, 0.1, 0.1}});
  const BlockParams bp = block_params(f);
  const std::array<double, 8> expected{0.6561, 0.0729, 0.0729, 0.0081,
                                       0.1539, 0.0171, 0.0171, 0.0019};
  for (std::size_t i = 0; i < 8; ++i) CHECK(bp.p[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("dephasing rejects probabilities outside [0, 1]") {
  CHECK(thrown_code([] { dephasing_state({{0.1, 1.2, 0, 0}}); }) == ErrorCode::DomainError);
  CHECK(dephasing_state({{0, 0, 0, 0}}) == FVector::basis(0));
}

TEST_CASE("sampling is deterministic in the seed") {
  CHECK(sample_random(7) == sample_random(7));
  CHECK_FALSE(sample_random(7) == sample_random(8));
  const RegionBias bias{Region::C2, Half::Second, std::nullopt};
  CHECK(sample_random(3, bias) == sample_random(3, bias));
}

TEST_CASE("biased sampling lands in the requested region") {
  for (Region r : kEntangledRegions) {
    for (Half h : {Half::First, Half::Second}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const RegionLabel label = classify(sample_random(seed, RegionBias{r, h, std::nullopt}));
        CHECK(label.region == r);
        CHECK(label.half == h);
      }
    }
  }
  const RegionLabel bisep =
      classify(sample_random(1, RegionBias{Region::Biseparable, Half::None, std::nullopt}));
  CHECK(bisep.region == Region::Biseparable);
}

TEST_CASE("unreachable or non-final targets are refused") {
  CHECK(thrown_code([] {
          sample_random(1, RegionBias{Region::D2, Half::First, std::nullopt});
        }) == ErrorCode::DomainError);
  // A concentration that almost never leaves the pure cluster state cannot
  // produce a C2 state within the budget.
  std::array<double, 16> conc;
  conc.fill(1e-3);
  conc[0] = 1e3;
  CHECK(thrown_code([&] {
          sample_random(1, RegionBias{Region::C2, Half::Second, conc});
        }) == ErrorCode::RegionUnreachable);
}
