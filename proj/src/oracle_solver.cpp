#include "clusterent/oracle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "clusterent/criteria.hpp"
#include "clusterent/error.hpp"

namespace clusterent {

std::vector<LinearConstraint> constraint_set() {
  std::vector<LinearConstraint> out;
  out.reserve(80);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int g = 0; g < 2; ++g) {
        for (int d = 0; d < 2; ++d) {
          LinearConstraint c;
          c.coeffs[static_cast<std::size_t>(basis_index(a, b, g, d))] += 2;
          for (int xi = 0; xi < 2; ++xi) {
            for (int eta = 0; eta < 2; ++eta) {
              c.coeffs[static_cast<std::size_t>(basis_index(1 - a, xi, eta, 1 - d))] += 1;
            }
          }
          c.bound = 1;
          out.push_back(c);
        }
      }
    }
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int g = 0; g < 2; ++g) {
        for (int d = 0; d < 2; ++d) {
          for (int mu = 0; mu < 2; ++mu) {
            for (int nu = 0; nu < 2; ++nu) {
              LinearConstraint c;
              c.coeffs[static_cast<std::size_t>(basis_index(a, b, g, d))] += 1;
              c.coeffs[static_cast<std::size_t>(basis_index(1 - a, mu, nu, 1 - d))] += 1;
              c.bound = 0.5;
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

using Vec = Eigen::Matrix<double, kBasisSize, 1>;
using Mat = Eigen::Matrix<double, kBasisSize, kBasisSize>;
using ConstraintMatrix = Eigen::Matrix<double, Eigen::Dynamic, kBasisSize>;

constexpr double kGrowth = 10.0;         // barrier weight multiplier per outer step
constexpr double kArmijo = 0.01;
constexpr double kCenteringTol = 1e-9;  // half squared Newton decrement
// Newton steps allowed per centering; near the rounding floor the decrement
// stops shrinking and further steps only burn budget.
constexpr int kCenteringSteps = 100;
constexpr double kFractionToBoundary = 0.99;

double objective_nats(const Vec& f, const Vec& x) {
  double s = 0;
  for (int a = 0; a < kBasisSize; ++a) {
    if (f[a] > 0) s += f[a] * std::log(f[a] / x[a]);
  }
  return s;
}

}  // namespace

SolveReport solve_min_relent(const FVector& fv, const SolveOptions& options) {
  if (!(options.tol >= 1e-10 && options.tol <= 1e-3)) {
    throw Error(ErrorCode::DomainError, "solver tolerance must lie in [1e-10, 1e-3]");
  }
  const auto constraints = constraint_set();
  const auto m_lin = static_cast<Eigen::Index>(constraints.size());
  ConstraintMatrix A(m_lin, kBasisSize);
  Eigen::VectorXd b(m_lin);
  for (Eigen::Index k = 0; k < m_lin; ++k) {
    const auto& c = constraints[static_cast<std::size_t>(k)];
    for (int a = 0; a < kBasisSize; ++a) A(k, a) = c.coeffs[static_cast<std::size_t>(a)];
    b[k] = c.bound;
  }
  Vec f;
  for (int a = 0; a < kBasisSize; ++a) f[a] = fv[a];

  // Inequalities: the linear constraints plus positivity of every coordinate.
  const double m_total = static_cast<double>(m_lin + kBasisSize);
  const double tol_nats = options.tol * std::numbers::ln2;

  Vec x = Vec::Constant(1.0 / kBasisSize);
  const Vec ones = Vec::Ones();
  double t = 1.0;
  SolveReport report;

  while (true) {
    // Centering: minimize t * KL(f || x) - sum log(slack) - sum log(x) on sum(x) = 1.
    for (int inner = 0; inner < kCenteringSteps; ++inner) {
      const Eigen::VectorXd slack = b - A * x;
      const Eigen::VectorXd inv_slack = slack.cwiseInverse();
      const Vec inv_x = x.cwiseInverse();

      const Vec grad = -t * f.cwiseProduct(inv_x) + A.transpose() * inv_slack - inv_x;
      Mat hess = A.transpose() * inv_slack.cwiseAbs2().asDiagonal() * A;
      hess.diagonal() += (t * f + ones).cwiseProduct(inv_x.cwiseAbs2());

      const Eigen::LDLT<Mat> ldlt(hess);
      const Vec h_grad = ldlt.solve(grad);
      const Vec h_ones = ldlt.solve(ones);
      const double w = -ones.dot(h_grad) / ones.dot(h_ones);
      Vec dx = -(h_grad + w * h_ones);
      dx.array() -= dx.sum() / kBasisSize;  // keep the step on sum(x) = 1

      const double slope = grad.dot(dx);
      if (!(slope < 0) || -slope / 2 <= kCenteringTol) break;

      // Largest step keeping every slack strictly positive.
      const Eigen::VectorXd a_dx = A * dx;
      double step = 1.0;
      for (int a = 0; a < kBasisSize; ++a) {
        if (dx[a] < 0) step = std::min(step, -kFractionToBoundary * x[a] / dx[a]);
      }
      for (Eigen::Index k = 0; k < m_lin; ++k) {
        if (a_dx[k] > 0) step = std::min(step, kFractionToBoundary * slack[k] / a_dx[k]);
      }

      // Merit change evaluated term by term with log1p, which stays accurate
      // when the barrier weight is large.
      auto merit_change = [&](double s) {
        double d = 0;
        for (int a = 0; a < kBasisSize; ++a) {
          const double r = std::log1p(s * dx[a] / x[a]);
          d -= (t * f[a] + 1) * r;
        }
        for (Eigen::Index k = 0; k < m_lin; ++k) d -= std::log1p(-s * a_dx[k] / slack[k]);
        return d;
      };
      while (step > 1e-16 && merit_change(step) > kArmijo * step * slope) step *= 0.5;
      if (step <= 1e-16) break;

      x += step * dx;
      if (++report.iterations > options.max_iterations) {
        throw Error(ErrorCode::NotConverged, "iteration budget of " +
                                                 std::to_string(options.max_iterations) +
                                                 " Newton steps exhausted");
      }
    }
    report.history.push_back(objective_nats(f, x) / std::numbers::ln2);
    if (m_total / t <= tol_nats) break;
    t *= kGrowth;
  }

  report.gap = m_total / t / std::numbers::ln2;
  report.value = report.history.back();

  double residual = std::abs(x.sum() - 1.0);
  residual = std::max(residual, (A * x - b).maxCoeff());
  residual = std::max(residual, -x.minCoeff());
  report.feasibility_residual = std::max(residual, 0.0);

  std::array<double, kBasisSize> lam{};
  for (int a = 0; a < kBasisSize; ++a) lam[static_cast<std::size_t>(a)] = x[a];
  report.lambda = FVector::validate(lam);
  return report;
}

bool boundary_equalities_hold(const FVector& lambda, BoundaryClass c, Half half, double tol) {
  const BlockParams bp = block_params(lambda);
  const Quad q = half == Half::Second ? second_quad(bp) : first_quad(bp);
  const bool pair = std::abs(pair_margin(q)) <= tol;
  const bool lead = std::abs(double_lead_margin(q)) <= tol;
  const bool partner = std::abs(double_partner_margin(q)) <= tol;
  switch (c) {
    case BoundaryClass::Self: return true;
    case BoundaryClass::I: return pair;
    case BoundaryClass::II: return lead;
    case BoundaryClass::III: return pair && lead;
    case BoundaryClass::IV: return partner;
    case BoundaryClass::V: return pair && partner;
  }
  return false;
}

VerifyReport verify(const FVector& f, const SolveOptions& options) {
  VerifyReport r;
  r.analytic = genuine_ree(f);
  r.oracle = solve_min_relent(f, options);
  r.discrepancy = std::abs(r.analytic.value - r.oracle.value);
  r.same_active_set = boundary_equalities_hold(r.oracle.lambda, r.analytic.closest.boundary,
                                               r.analytic.label.half, kActiveTol);
  return r;
}

}  // namespace clusterent
