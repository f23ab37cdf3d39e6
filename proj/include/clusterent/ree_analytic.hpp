#pragma once

#include <string_view>

#include "clusterent/classify.hpp"
#include "clusterent/criteria.hpp"
#include "clusterent/state_model.hpp"

namespace clusterent {

/// H2(x) in bits with 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double x);

/// Sum over F_a > 0 of F_a log2(F_a / L_a). Returns +inf when L vanishes
/// somewhere F does not.
double relative_entropy(const FVector& f, const FVector& l);

/// The closed-form expressions, plus Zero for biseparable states.
enum class Formula { Zero, EA, EB, EC, EA2, EA3 };

/// "zero", "E_A", "E_B", "E_C", "E_A''", "E_A'''".
std::string_view to_string(Formula f);

/// Formula used for the REE of a region.
Formula formula_for(Region r);

/// Evaluates a formula at a quad without checking the region. Arguments of
/// the entropy terms must lie in [0, 1].
double evaluate_formula(Formula formula, const Quad& q);

/// Formula of the region evaluated at the quad. Throws RegionMismatch when
/// classify_quad(q) is not `region`.
double formula_value(Region region, const Quad& q);

/// Boundary class of a closest biseparable state; Self means the input was
/// already biseparable.
enum class BoundaryClass { Self, I, II, III, IV, V };

std::string_view to_string(BoundaryClass c);

struct ClosestState {
  FVector lambda = FVector::uniform();
  BoundaryClass boundary = BoundaryClass::Self;
};

/// Closed-form closest biseparable state for the region `label` of `f`.
/// Second-half labels are handled by conjugating with flip_delta().
ClosestState closest_state(const FVector& f, const RegionLabel& label);

struct REEResult {
  double value = 0;  // bits
  RegionLabel label;
  ClosestState closest;
  Formula formula = Formula::Zero;
  CriteriaReport report;
};

REEResult genuine_ree(const FVector& f, double eps = 0.0);

/// E(x) = 1 - x H2(p3 / x) - (1 - x) H2(p0 / (1 - x)) for p3 <= x <= 1 - p0.
/// E(p3 + p7) is E_B and E(1 - p0 - p4) is E_A''.
double edge_profile(double p0, double p3, double x);

/// The single stationary point x* = p3 / (p0 + p3), where E is minimal.
double edge_profile_minimizer(double p0, double p3);

}  // namespace clusterent
