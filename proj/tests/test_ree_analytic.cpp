#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "clusterent/criteria.hpp"
#include "clusterent/error.hpp"
#include "clusterent/oracle_solver.hpp"
#include "clusterent/ree_analytic.hpp"
#include "helpers.hpp"

using namespace clusterent;
using testing::sparse;
using testing::thrown_code;

namespace {

// Reference values computed independently with an off-the-shelf convex solver
// and the closed forms in high precision.
constexpr double kH2Quarter = 0.81127812445913283;
constexpr double kKLHalfVsThreeQuarter = 0.20751874963942185;
constexpr double kBExample = 0.089072757930459823;
constexpr double kD1Example = 0.018226398830013979;
constexpr double kC2Example = 0.0021228355862521029;
constexpr double kA3Example = 0.036766874675479698;
constexpr double kDephased01 = 0.07925722554970438;

const FVector& b_state() {
  static const FVector f = sparse({{0, 0.4}, {9, 0.25}, {11, 0.2}, {2, 0.15}});
  return f;
}

Quad swapped(const Quad& q) { return {q.p3, q.p0, q.p7, q.p4}; }

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0) == 0.0);
  CHECK(binary_entropy(1) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(kH2Quarter).epsilon(1e-15));
  CHECK(thrown_code([] { binary_entropy(1.5); }) == ErrorCode::DomainError);
  CHECK(thrown_code([] { binary_entropy(-0.1); }) == ErrorCode::DomainError);
}

TEST_CASE("relative entropy") {
  const FVector p = sparse({{0, 0.5}, {1, 0.5}});
  const FVector q = sparse({{0, 0.75}, {1, 0.25}});
  CHECK(relative_entropy(p, q) == doctest::Approx(kKLHalfVsThreeQuarter).epsilon(1e-15));
  CHECK(relative_entropy(p, p) == 0.0);
  CHECK(std::isinf(relative_entropy(FVector::uniform(), FVector::basis(0))));
  CHECK(relative_entropy(FVector::basis(0), FVector::uniform()) == 4.0);
}

TEST_CASE("formula names") {
  CHECK(to_string(Formula::EA) == "E_A");
  CHECK(to_string(Formula::EA2) == "E_A''");
  CHECK(to_string(Formula::EA3) == "E_A'''");
  CHECK(formula_for(Region::D1Prime) == Formula::EA3);
  CHECK(formula_for(Region::C2) == Formula::EC);
  CHECK(formula_for(Region::D2) == Formula::Zero);
}

TEST_CASE("formula values at named quads") {
  CHECK(formula_value(Region::APrime, {1, 0, 0, 0}) == 1.0);
  CHECK(evaluate_formula(Formula::EA, {0.4, 0.2, 0, 0}) ==
        doctest::Approx(1 - binary_entropy(0.6)).epsilon(1e-15));
  CHECK(formula_value(Region::B, {0.4, 0.25, 0.15, 0.2}) == doctest::Approx(kBExample).epsilon(1e-14));
  CHECK(formula_value(Region::D1Prime, {0.2, 0.25, 0.4, 0.05}) ==
        doctest::Approx(kD1Example).epsilon(1e-14));
  CHECK(formula_value(Region::ATriplePrime, {0.25, 0.3, 0.3, 0.1}) ==
        doctest::Approx(kA3Example).epsilon(1e-14));
  CHECK(formula_value(Region::C2, {0.45, 0.05, 0.1, 0.1}) == doctest::Approx(kC2Example).epsilon(1e-14));
  CHECK(formula_value(Region::Biseparable, {1.0 / 16, 1.0 / 16, 3.0 / 16, 3.0 / 16}) == 0.0);
}

TEST_CASE("formula_value refuses the wrong region") {
  CHECK(thrown_code([] { formula_value(Region::APrime, {0.4, 0.25, 0.15, 0.2}); }) ==
        ErrorCode::RegionMismatch);
  CHECK(thrown_code([] { formula_value(Region::B, {0.1, 0.1, 0.5, 0}); }) == ErrorCode::InvalidQuad);
}

TEST_CASE("genuine REE of named states") {
  const REEResult pure = genuine_ree(FVector::basis(0));
  CHECK(pure.value == 1.0);
  CHECK(pure.label.region == Region::APrime);
  CHECK(pure.closest.boundary == BoundaryClass::I);

  const REEResult mixed = genuine_ree(FVector::uniform());
  CHECK(mixed.value == 0.0);
  CHECK(mixed.formula == Formula::Zero);
  CHECK(mixed.closest.boundary == BoundaryClass::Self);
  CHECK(mixed.closest.lambda == FVector::uniform());

  const REEResult b = genuine_ree(b_state());
  CHECK(b.label.region == Region::B);
  CHECK(b.closest.boundary == BoundaryClass::III);
  CHECK(b.value == doctest::Approx(kBExample).epsilon(1e-14));

  const REEResult deph = genuine_ree(dephasing_state({{0.1, 0.1, 0.1, 0.1}}));
  CHECK(deph.label.region == Region::APrime);
  CHECK(deph.value == doctest::Approx(kDephased01).epsilon(1e-13));
  CHECK(deph.value == doctest::Approx(1 - binary_entropy(0.6561 + 0.0081)).epsilon(1e-13));

  const REEResult d1 =
      genuine_ree(sparse({{0, 0.2}, {2, 0.2}, {4, 0.2}, {9, 0.25}, {11, 0.05}, {1, 0.1}}));
  CHECK(d1.label.region == Region::D1Prime);
  CHECK(d1.closest.boundary == BoundaryClass::IV);
  CHECK(d1.value == doctest::Approx(kD1Example).epsilon(1e-14));
}

TEST_CASE("C2 example: class II closest state on the v6 boundary") {
  const FVector f = sparse({{0, 0.45}, {9, 0.05}, {2, 0.1}, {11, 0.05}, {13, 0.05}, {1, 0.3}});
  const REEResult r = genuine_ree(f);
  CHECK(r.label.region == Region::C2);
  CHECK(r.closest.boundary == BoundaryClass::II);
  const Quad q = first_quad(block_params(r.closest.lambda));
  CHECK(std::abs(double_lead_margin(q)) <= 1e-15);
  CHECK(r.value == doctest::Approx(kC2Example).epsilon(1e-14));
  CHECK(relative_entropy(f, r.closest.lambda) == doctest::Approx(r.value).epsilon(1e-13));
}

TEST_CASE("closed form equals the KL divergence to the constructed closest state") {
  for (Region region : kEntangledRegions) {
    for (Half half : {Half::First, Half::Second}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const FVector f = sample_random(seed, RegionBias{region, half, std::nullopt});
        const REEResult r = genuine_ree(f);
        REQUIRE(r.label.region == region);
        CHECK(std::abs(relative_entropy(f, r.closest.lambda) - r.value) <= 1e-12);
        CHECK(biseparable_verdict(r.closest.lambda, 1e-12).biseparable);
        CHECK(boundary_equalities_hold(r.closest.lambda, r.closest.boundary, half, 1e-12));
      }
    }
  }
}

TEST_CASE("degenerate groups with no mass still give a biseparable closest state") {
  // Class I with every entry outside the two maxima zero.
  const FVector a = sparse({{0, 0.7}, {9, 0.3}});
  const REEResult ra = genuine_ree(a);
  CHECK(ra.label.region == Region::APrime);
  CHECK(biseparable_verdict(ra.closest.lambda, 1e-12).biseparable);
  CHECK(relative_entropy(a, ra.closest.lambda) == doctest::Approx(ra.value).epsilon(1e-13));

  // Class III with an empty block (0,0) residual and no off-block mass.
  const FVector b = sparse({{0, 0.6}, {9, 0.3}, {11, 0.1}});
  const REEResult rb = genuine_ree(b);
  CHECK(rb.label.region == Region::B);
  CHECK(biseparable_verdict(rb.closest.lambda, 1e-12).biseparable);
  CHECK(relative_entropy(b, rb.closest.lambda) == doctest::Approx(rb.value).epsilon(1e-13));
}

TEST_CASE("REE is invariant under within-block permutations and the delta flip") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const FVector f = sample_random(seed);
    std::array<double, 16> shuffled = f.values();
    for (int k = 0; k < 4; ++k) {
      auto m = block_members(k);
      std::array<double, 4> vals{};
      for (std::size_t j = 0; j < 4; ++j) vals[j] = f[m[j]];
      std::shuffle(vals.begin(), vals.end(), rng);
      for (std::size_t j = 0; j < 4; ++j) shuffled[static_cast<std::size_t>(m[j])] = vals[j];
    }
    const double e = genuine_ree(f).value;
    CHECK(genuine_ree(FVector::validate(shuffled)).value == doctest::Approx(e).epsilon(1e-13));
    CHECK(genuine_ree(flip_delta(f)).value == e);
  }
}

TEST_CASE("exchange identities between formulas") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const BlockParams bp = block_params(sample_random(seed));
    const Quad q = first_quad(bp);
    CHECK(evaluate_formula(Formula::EA3, q) == evaluate_formula(Formula::EC, swapped(q)));
    CHECK(evaluate_formula(Formula::EA2, q) == evaluate_formula(Formula::EB, swapped(q)));
    CHECK(evaluate_formula(Formula::EA, q) == evaluate_formula(Formula::EA, swapped(q)));
  }
}

TEST_CASE("edge profile reproduces the B and A'' formulas") {
  for (Region r : {Region::B, Region::ADoublePrime, Region::C1, Region::ATriplePrime}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Quad q =
          first_quad(block_params(sample_random(seed, RegionBias{r, Half::First, std::nullopt})));
      CHECK(edge_profile(q.p0, q.p3, q.p3 + q.p7) == evaluate_formula(Formula::EB, q));
      CHECK(edge_profile(q.p0, q.p3, 1 - q.p0 - q.p4) ==
            doctest::Approx(evaluate_formula(Formula::EA2, q)).epsilon(1e-14));
    }
  }
}

TEST_CASE("edge profile has a single minimum at p3 / (p0 + p3)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kNodes = 2001;
  for (int trial = 0; trial < 200; ++trial) {
    const double p0 = unit(rng) * 0.9 + 0.05;
    const double p3 = unit(rng) * (1 - p0 - 0.02) + 0.01;
    const double lo = p3, hi = 1 - p0;
    const double step = (hi - lo) / (kNodes - 1);
    int flips = 0;
    double flip_at = 0;
    double prev = edge_profile(p0, p3, lo);
    int prev_sign = 0;
    for (int i = 1; i < kNodes; ++i) {
      const double x = i == kNodes - 1 ? hi : lo + step * i;
      const double e = edge_profile(p0, p3, x);
      const int sign = e > prev ? 1 : -1;
      if (prev_sign < 0 && sign > 0) {
        ++flips;
        flip_at = x - step;
      }
      prev_sign = sign;
      prev = e;
    }
    CHECK(flips == 1);
    CHECK(std::abs(flip_at - edge_profile_minimizer(p0, p3)) <= 2 * step);
  }
  CHECK(thrown_code([] { edge_profile(0.5, 0.2, 0.1); }) == ErrorCode::DomainError);
  CHECK(thrown_code([] { edge_profile_minimizer(0, 0); }) == ErrorCode::DomainError);
}

TEST_CASE("formula orderings used to pick the region formula") {
  constexpr double kSlack = 1e-12;
  for (Region r : kEntangledRegions) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Quad q =
          first_quad(block_params(sample_random(seed, RegionBias{r, Half::First, std::nullopt})));
      const double ea = evaluate_formula(Formula::EA, q);
      const double eb = evaluate_formula(Formula::EB, q);
      const double ec = evaluate_formula(Formula::EC, q);
      const double ea2 = evaluate_formula(Formula::EA2, q);
      const double ea3 = evaluate_formula(Formula::EA3, q);
      switch (r) {
        case Region::APrime:
          CHECK(ea <= eb + kSlack);
          break;
        case Region::B:
          CHECK(eb <= ea2 + kSlack);
          break;
        case Region::C1:
        case Region::C2:
          CHECK(ec <= eb + kSlack);
          CHECK(eb <= ea2 + kSlack);
          break;
        case Region::ATriplePrime:
          CHECK(ea3 <= ea2 + kSlack);
          CHECK(eb >= ea2 - kSlack);
          break;
        case Region::ADoublePrime:
        case Region::D1Prime:
          CHECK(eb >= ea2 - kSlack);
          break;
        default:
          break;
      }
    }
  }
}
