#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterent/region.hpp"
#include "clusterent/state_model.hpp"

namespace clusterent {

/// Final label of a state. For biseparable states `detail` keeps the
/// first-half D label (D1'' or D2); otherwise it equals `region`.
struct RegionLabel {
  Region region = Region::Biseparable;
  Half half = Half::None;
  Region detail = Region::Biseparable;

  bool entangled() const { return is_entangled(region); }
};

/// Border values of one quad. When p0 + p3 == 0 both thresholds are +inf.
struct Thresholds {
  double ab_border = 0;      // p7 at the A/B border
  double a_layer_border = 0; // p4 at the A'/A'' border
  double roof = 0;           // 1 - (p0 + p3 + p7), the room left for p4
};

Thresholds thresholds(const Quad& q);

/// Throws InvalidQuad if the quad cannot come from a valid state.
void check_quad(const Quad& q);

/// Region of one half. Boundary points go to the closed side: p7 == border
/// stays in A, p4 == p0 is A''', p7 == p3 is C1, p0 + p3 == 1/2 is not a
/// violation.
Region classify_quad(const Quad& q);

/// Classifies a state by the first half when it violates the criteria,
/// otherwise by the second half, otherwise reports Biseparable.
RegionLabel classify(const FVector& f, double eps = 0.0);

// ---------------------------------------------------------------------------
// Figure data

enum class GridPlane {
  P3P7,  // x = p3, y = p7, p4 held fixed
  P3P4,  // x = p3, y = p4, p7 held fixed
};

struct GridCell {
  double x = 0, y = 0;
  std::optional<Region> region;  // nullopt: unphysical parameters
};

struct Polyline {
  std::string name;
  std::vector<std::array<double, 2>> points;
};

struct GridPoint {
  std::string name;
  double x = 0, y = 0;
};

struct RegionGrid {
  double p0 = 0;
  GridPlane plane = GridPlane::P3P7;
  double fixed = 0;  // p4 for P3P7, p7 for P3P4
  double axis_max = 0;
  int resolution = 0;
  std::vector<GridCell> cells;  // row-major, y outer
  std::vector<Polyline> boundaries;
  std::vector<GridPoint> intersections;
};

/// Labels a resolution x resolution grid of nodes over [0, axis_max]^2. The
/// first-half parameters are realized with a biseparable second half, so the
/// labels are classify_quad() of (p0, x, fixed, y) or (p0, x, y, fixed).
RegionGrid region_grid(double p0, double axis_max, int resolution,
                       GridPlane plane = GridPlane::P3P7, double fixed = 0.0);

/// Borders of the biseparable polytope in (l3, l7, l4) at fixed l0.
enum class Surface {
  I,        // l0 + l3 = 1/2
  II,       // 2 l0 + l3 + l7 = 1
  III,      // I and II
  IV,       // l0 + 2 l3 + l4 = 1
  V,        // I and IV
  VI,       // l0 + l3 + l4 + l7 = 1
  VII,      // l4 = 3 l0
  Cap73,    // l7 = 3 l3
};

std::string_view to_string(Surface s);

struct SurfacePoint {
  double l3 = 0, l7 = 0, l4 = 0;
  bool feasible = false;
  std::uint16_t surface_mask = 0;

  bool on(Surface s) const { return (surface_mask >> static_cast<int>(s)) & 1u; }
  std::vector<Surface> surfaces() const;
};

/// Feasibility of a single point and the borders it lies on (|margin| <= tol).
SurfacePoint classify_surface_point(double l0, double l3, double l7, double l4,
                                    double tol = 1e-12);

struct SurfaceGrid {
  double l0 = 0;
  int resolution = 0;
  std::vector<SurfacePoint> points;  // l4 outer, then l7, then l3
};

/// Grid over [0, 1 - l0]^3. A node is tagged with a border when it is within
/// one grid step of it.
SurfaceGrid bisep_surface(double l0, int resolution);

}  // namespace clusterent
