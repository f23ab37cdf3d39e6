#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "clusterent/state_model.hpp"

namespace clusterent {

/// The six reduced biseparability inequalities, first half then second half.
/// Each is "left side <= right side"; margin = left - right.
enum class Inequality {
  Pair03,    // p0 + p3 <= 1/2
  Double0,   // 2p0 + p3 + p7 <= 1
  Double3,   // 2p3 + p0 + p4 <= 1
  Pair12,    // p1 + p2 <= 1/2
  Double1,   // 2p1 + p2 + p6 <= 1
  Double2,   // 2p2 + p1 + p5 <= 1
};

inline constexpr int kInequalityCount = 6;

/// Wire labels "v5" ... "v10".
std::string_view to_string(Inequality k);

/// Margins of the three inequalities of one half, in quad roles. The
/// classification and the criteria share these so both agree bit for bit.
double pair_margin(const Quad& q);
double double_lead_margin(const Quad& q);
double double_partner_margin(const Quad& q);

/// One violated instance of the original criteria. Family 1 instances carry
/// (alpha, beta, gamma, delta); family 2 instances also carry (mu, nu).
struct RawViolation {
  int family = 1;
  std::array<int, 6> indices{};
  double excess = 0;
};

struct CriteriaReport {
  std::array<bool, kInequalityCount> violated{};
  std::array<double, kInequalityCount> margins{};
  std::vector<RawViolation> raw;

  bool first_half_violated() const { return violated[0] || violated[1] || violated[2]; }
  bool second_half_violated() const { return violated[3] || violated[4] || violated[5]; }
  bool any_violated() const { return first_half_violated() || second_half_violated(); }
};

/// Exhaustive evaluation of both original inequality families over every
/// index choice (16 + 64 instances). Returns the instances whose left side
/// exceeds the right side by more than eps.
std::vector<RawViolation> raw_criteria(const FVector& f, double eps = 0.0);

/// Reduced criteria on the block parameters. Throws MutualExclusionBreach if
/// both halves are flagged.
CriteriaReport reduced_criteria(const BlockParams& bp, double eps = 0.0);

struct Verdict {
  bool biseparable = true;
  CriteriaReport report;
};

/// Biseparable iff no reduced inequality is violated. The report also lists
/// the raw violations.
Verdict biseparable_verdict(const FVector& f, double eps = 0.0);

}  // namespace clusterent
