#include "clusterent/criteria.hpp"

#include "clusterent/error.hpp"

namespace clusterent {

std::string_view to_string(Inequality k) {
  switch (k) {
    case Inequality::Pair03: return "v5";
    case Inequality::Double0: return "v6";
    case Inequality::Double3: return "v7";
    case Inequality::Pair12: return "v8";
    case Inequality::Double1: return "v9";
    case Inequality::Double2: return "v10";
  }
  return "?";
}

double pair_margin(const Quad& q) { return q.p0 + q.p3 - 0.5; }
double double_lead_margin(const Quad& q) { return 2 * q.p0 + q.p3 + q.p7 - 1.0; }
double double_partner_margin(const Quad& q) { return 2 * q.p3 + q.p0 + q.p4 - 1.0; }

std::vector<RawViolation> raw_criteria(const FVector& f, double eps) {
  std::vector<RawViolation> out;
  auto block_sum = [&](int alpha, int delta) {
    double s = 0;
    for (int xi = 0; xi < 2; ++xi) {
      for (int eta = 0; eta < 2; ++eta) s += f[basis_index(alpha, xi, eta, delta)];
    }
    return s;
  };

  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      const int na = 1 - a;
      const int nd = 1 - d;
      const double same = block_sum(a, d);
      const double flip_d = block_sum(a, nd);
      const double flip_a = block_sum(na, d);
      const double flip_both = block_sum(na, nd);
      for (int b = 0; b < 2; ++b) {
        for (int g = 0; g < 2; ++g) {
          const double x = f[basis_index(a, b, g, d)];
          // 2F_{abgd} <= sum (F_{a..d} + F_{a..~d} + F_{~a..d})
          const double excess1 = 2 * x - (same + flip_d + flip_a);
          if (excess1 > eps) out.push_back({1, {a, b, g, d, 0, 0}, excess1});
          for (int mu = 0; mu < 2; ++mu) {
            for (int nu = 0; nu < 2; ++nu) {
              // 2F_{abgd} + 2F_{~a mu nu ~d} <= sum over all four blocks
              const double y = f[basis_index(na, mu, nu, nd)];
              const double excess2 = 2 * x + 2 * y - (same + flip_d + flip_a + flip_both);
              if (excess2 > eps) out.push_back({2, {a, b, g, d, mu, nu}, excess2});
            }
          }
        }
      }
    }
  }
  return out;
}

CriteriaReport reduced_criteria(const BlockParams& bp, double eps) {
  const Quad first = first_quad(bp);
  const Quad second = second_quad(bp);
  CriteriaReport r;
  r.margins = {pair_margin(first),  double_lead_margin(first),  double_partner_margin(first),
               pair_margin(second), double_lead_margin(second), double_partner_margin(second)};
  for (int k = 0; k < kInequalityCount; ++k) {
    r.violated[static_cast<std::size_t>(k)] = r.margins[static_cast<std::size_t>(k)] > eps;
  }
  if (r.first_half_violated() && r.second_half_violated()) {
    throw Error(ErrorCode::MutualExclusionBreach,
                "both halves of the reduced criteria are violated; input is not a valid state");
  }
  return r;
}

Verdict biseparable_verdict(const FVector& f, double eps) {
  Verdict v;
  v.report = reduced_criteria(block_params(f), eps);
  v.report.raw = raw_criteria(f, eps);
  v.biseparable = !v.report.any_violated();
  return v;
}

}  // namespace clusterent
