#pragma once

#include <array>
#include <string>
#include <vector>

#include "clusterent/ree_analytic.hpp"
#include "clusterent/state_model.hpp"

namespace clusterent {

/// c . lambda <= bound
struct LinearConstraint {
  std::array<double, kBasisSize> coeffs{};
  double bound = 0;
};

/// The 16 family-1 constraints 2L_{abcd} + sum_{xy} L_{~a xy ~d} <= 1 followed
/// by the 64 family-2 constraints L_{abcd} + L_{~a mn ~d} <= 1/2. Duplicates
/// are kept.
std::vector<LinearConstraint> constraint_set();

inline constexpr double kDefaultSolverTol = 1e-6;

struct SolveOptions {
  double tol = kDefaultSolverTol;  // bits, on the objective
  long max_iterations = 1'000'000; // Newton steps
};

struct SolveReport {
  double value = 0;  // bits
  FVector lambda = FVector::uniform();
  long iterations = 0;
  double gap = 0;  // duality-gap bound in bits
  double feasibility_residual = 0;
  /// Objective in bits after each centering step.
  std::vector<double> history;
};

/// Minimizes the relative entropy to F over the biseparable cluster-diagonal
/// polytope with a log-barrier Newton method started at the uniform state.
/// Throws NotConverged when the iteration budget runs out.
SolveReport solve_min_relent(const FVector& f, const SolveOptions& options = {});

struct VerifyReport {
  REEResult analytic;
  SolveReport oracle;
  double discrepancy = 0;  // |E_analytic - E_oracle|
  /// Whether the oracle optimum meets the boundary equalities of the
  /// analytic class to within active_tol.
  bool same_active_set = true;
};

inline constexpr double kActiveTol = 1e-5;

VerifyReport verify(const FVector& f, const SolveOptions& options = {});

/// True when the boundary equalities of class c hold for lambda within tol,
/// read on the given half.
bool boundary_equalities_hold(const FVector& lambda, BoundaryClass c, Half half,
                              double tol);

}  // namespace clusterent
