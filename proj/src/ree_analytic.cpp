#include "clusterent/ree_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "clusterent/error.hpp"

namespace clusterent {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainError, "binary entropy argument " + std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double relative_entropy(const FVector& f, const FVector& l) {
  double sum = 0;
  for (int a = 0; a < kBasisSize; ++a) {
    if (f[a] <= 0) continue;
    if (l[a] <= 0) return std::numeric_limits<double>::infinity();
    sum += f[a] * std::log2(f[a] / l[a]);
  }
  return sum;
}

std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::Zero: return "zero";
    case Formula::EA: return "E_A";
    case Formula::EB: return "E_B";
    case Formula::EC: return "E_C";
    case Formula::EA2: return "E_A''";
    case Formula::EA3: return "E_A'''";
  }
  return "?";
}

std::string_view to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Self: return "Self";
    case BoundaryClass::I: return "I";
    case BoundaryClass::II: return "II";
    case BoundaryClass::III: return "III";
    case BoundaryClass::IV: return "IV";
    case BoundaryClass::V: return "V";
  }
  return "?";
}

Formula formula_for(Region r) {
  switch (r) {
    case Region::APrime: return Formula::EA;
    case Region::ADoublePrime: return Formula::EA2;
    case Region::ATriplePrime:
    case Region::D1Prime: return Formula::EA3;
    case Region::B: return Formula::EB;
    case Region::C1:
    case Region::C2: return Formula::EC;
    default: return Formula::Zero;
  }
}

namespace {

BoundaryClass boundary_for(Region r) {
  switch (r) {
    case Region::APrime: return BoundaryClass::I;
    case Region::C1:
    case Region::C2: return BoundaryClass::II;
    case Region::B: return BoundaryClass::III;
    case Region::ATriplePrime:
    case Region::D1Prime: return BoundaryClass::IV;
    case Region::ADoublePrime: return BoundaryClass::V;
    default: return BoundaryClass::Self;
  }
}

// weight * H2(part / weight), zero when the weight vanishes. Ratios past 1 by
// rounding only are clamped.
double weighted_h2(double weight, double part) {
  if (weight <= 0) return 0.0;
  double r = part / weight;
  if (r > 1.0 && r <= 1.0 + 1e-12) r = 1.0;
  if (r < 0.0 && r >= -1e-12) r = 0.0;
  return weight * binary_entropy(r);
}

}  // namespace

double evaluate_formula(Formula formula, const Quad& q) {
  double e = 0;
  switch (formula) {
    case Formula::Zero:
      return 0.0;
    case Formula::EA:
      e = 1 - binary_entropy(std::clamp(q.p0 + q.p3, 0.0, 1.0));
      break;
    case Formula::EC: {
      const double t = 1 - q.p3 - q.p7;
      e = t - weighted_h2(t, q.p0);
      break;
    }
    case Formula::EB: {
      const double x = q.p3 + q.p7;
      e = 1 - weighted_h2(x, q.p3) - weighted_h2(1 - x, q.p0);
      break;
    }
    case Formula::EA3: {
      const double u = 1 - q.p0 - q.p4;
      e = u - weighted_h2(u, q.p3);
      break;
    }
    case Formula::EA2: {
      const double w = q.p0 + q.p4;
      e = 1 - weighted_h2(w, q.p0) - weighted_h2(1 - w, q.p3);
      break;
    }
  }
  return std::max(e, 0.0);
}

double formula_value(Region region, const Quad& q) {
  const Region actual = classify_quad(q);
  const bool matches = actual == region || (region == Region::Biseparable && !is_entangled(actual));
  if (!matches) {
    throw Error(ErrorCode::RegionMismatch, "quad lies in region " + std::string(to_string(actual)) +
                                               ", not " + std::string(to_string(region)));
  }
  return evaluate_formula(formula_for(region), q);
}

namespace {

using Lambda = std::array<double, kBasisSize>;

// Gives `members` a total mass `target` in proportion to F. A group that carries
// no F mass gets the target spread evenly over its zero-F entries, preferring
// the off blocks (0,1) and (1,0), which the first-half equalities never see.
void fill_group(const FVector& f, Lambda& lambda, const std::vector<int>& members, double target) {
  double mass = 0;
  for (int a : members) mass += f[a];
  if (mass > 0) {
    for (int a : members) lambda[static_cast<std::size_t>(a)] = f[a] * (target / mass);
    return;
  }
  std::vector<int> slots;
  for (int a : members) {
    if (block_of(a) == 1 || block_of(a) == 2) slots.push_back(a);
  }
  if (slots.empty()) slots = members;
  for (int a : members) lambda[static_cast<std::size_t>(a)] = 0;
  for (int a : slots) lambda[static_cast<std::size_t>(a)] = target / static_cast<double>(slots.size());
}

std::vector<int> non_max(const BlockParams& bp, int block) {
  std::vector<int> out;
  const int m = bp.max_index(block);
  for (int a : block_members(block)) {
    if (a != m) out.push_back(a);
  }
  return out;
}

std::vector<int> joined(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Closest state for a first-half region.
FVector closest_first_half(const FVector& f, Region region) {
  const BlockParams bp = block_params(f);
  const Quad q = first_quad(bp);
  const int m0 = bp.max_index(0);
  const int m3 = bp.max_index(3);
  const std::vector<int> rest00 = non_max(bp, 0);
  const std::vector<int> rest11 = non_max(bp, 3);
  std::vector<int> off;
  for (int k : {1, 2}) {
    for (int a : block_members(k)) off.push_back(a);
  }

  Lambda lambda{};
  auto set = [&](int a, double v) { lambda[static_cast<std::size_t>(a)] = v; };
  auto keep = [&](int block) {
    for (int a : block_members(block)) set(a, f[a]);
  };

  switch (boundary_for(region)) {
    case BoundaryClass::I: {
      const double s = q.p0 + q.p3;
      set(m0, q.p0 / (2 * s));
      set(m3, q.p3 / (2 * s));
      fill_group(f, lambda, joined({rest00, rest11, off}), 0.5);
      break;
    }
    case BoundaryClass::II: {
      const double t = 1 - q.p3 - q.p7;
      keep(3);
      set(m0, t / 2);
      fill_group(f, lambda, joined({rest00, off}), t / 2);
      break;
    }
    case BoundaryClass::III: {
      const double t = 1 - q.p3 - q.p7;
      const double x = q.p3 + q.p7;
      set(m0, t / 2);
      set(m3, x / 2);
      fill_group(f, lambda, rest11, x / 2);
      fill_group(f, lambda, joined({rest00, off}), t / 2);
      break;
    }
    case BoundaryClass::IV: {
      const double u = 1 - q.p0 - q.p4;
      keep(0);
      set(m3, u / 2);
      fill_group(f, lambda, joined({rest11, off}), u / 2);
      break;
    }
    case BoundaryClass::V: {
      const double u = 1 - q.p0 - q.p4;
      const double w = q.p0 + q.p4;
      set(m3, u / 2);
      set(m0, w / 2);
      fill_group(f, lambda, rest00, w / 2);
      fill_group(f, lambda, joined({rest11, off}), u / 2);
      break;
    }
    case BoundaryClass::Self:
      return f;
  }
  return FVector::validate(lambda);
}

}  // namespace

ClosestState closest_state(const FVector& f, const RegionLabel& label) {
  if (!label.entangled()) return {f, BoundaryClass::Self};
  const BoundaryClass cls = boundary_for(label.region);
  if (label.half == Half::Second) {
    return {flip_delta(closest_first_half(flip_delta(f), label.region)), cls};
  }
  return {closest_first_half(f, label.region), cls};
}

REEResult genuine_ree(const FVector& f, double eps) {
  REEResult r;
  r.label = classify(f, eps);
  r.report = biseparable_verdict(f, eps).report;
  r.closest = closest_state(f, r.label);
  if (!r.label.entangled()) return r;

  const BlockParams bp = block_params(f);
  const Quad q = r.label.half == Half::Second ? second_quad(bp) : first_quad(bp);
  r.formula = formula_for(r.label.region);
  r.value = evaluate_formula(r.formula, q);
  return r;
}

double edge_profile(double p0, double p3, double x) {
  constexpr double kTol = 1e-12;
  if (!(x >= p3 - kTol && x <= 1 - p0 + kTol && p0 >= 0 && p3 >= 0)) {
    throw Error(ErrorCode::DomainError, "edge profile needs p3 <= x <= 1 - p0");
  }
  return 1 - weighted_h2(x, p3) - weighted_h2(1 - x, p0);
}

double edge_profile_minimizer(double p0, double p3) {
  if (!(p0 + p3 > 0)) throw Error(ErrorCode::DomainError, "edge profile needs p0 + p3 > 0");
  return p3 / (p0 + p3);
}

}  // namespace clusterent
