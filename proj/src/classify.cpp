#include "clusterent/classify.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "clusterent/criteria.hpp"
#include "clusterent/error.hpp"

namespace clusterent {

namespace {

constexpr double kQuadTol = 1e-12;

std::string describe(const Quad& q) {
  return "(" + std::to_string(q.p0) + ", " + std::to_string(q.p3) + ", " + std::to_string(q.p4) +
         ", " + std::to_string(q.p7) + ")";
}

}  // namespace

Thresholds thresholds(const Quad& q) {
  const double s = q.p0 + q.p3;
  Thresholds t;
  if (s > 0) {
    t.ab_border = q.p3 * (1 - s) / s;
    t.a_layer_border = q.p0 * (1 - s) / s;
  } else {
    t.ab_border = std::numeric_limits<double>::infinity();
    t.a_layer_border = std::numeric_limits<double>::infinity();
  }
  t.roof = 1 - (q.p0 + q.p3 + q.p7);
  return t;
}

void check_quad(const Quad& q) {
  const bool finite = std::isfinite(q.p0) && std::isfinite(q.p3) && std::isfinite(q.p4) &&
                      std::isfinite(q.p7);
  if (!finite || q.p0 < -kQuadTol || q.p3 < -kQuadTol || q.p4 < -kQuadTol || q.p7 < -kQuadTol) {
    throw Error(ErrorCode::InvalidQuad, "negative or non-finite parameter in " + describe(q));
  }
  // Each residual sums three entries bounded by the block maximum.
  if (q.p4 > 3 * q.p0 + kQuadTol || q.p7 > 3 * q.p3 + kQuadTol) {
    throw Error(ErrorCode::InvalidQuad, "residual exceeds three block maxima in " + describe(q));
  }
  if (q.p0 + q.p3 + q.p4 + q.p7 > 1 + kQuadTol) {
    throw Error(ErrorCode::InvalidQuad, "parameters exceed unit mass in " + describe(q));
  }
}

Region classify_quad(const Quad& q) {
  check_quad(q);
  const Thresholds t = thresholds(q);
  if (pair_margin(q) > 0) {
    if (q.p7 > t.ab_border) return q.p7 < q.p3 ? Region::B : Region::C1;
    if (q.p4 <= t.a_layer_border) return Region::APrime;
    if (q.p4 < q.p0) return Region::ADoublePrime;
    return Region::ATriplePrime;
  }
  if (q.p7 >= q.p3) return double_lead_margin(q) > 0 ? Region::C2 : Region::D2;
  return double_partner_margin(q) > 0 ? Region::D1Prime : Region::D1DoublePrime;
}

RegionLabel classify(const FVector& f, double eps) {
  const BlockParams bp = block_params(f);
  const CriteriaReport report = reduced_criteria(bp, eps);
  const Region first = classify_quad(first_quad(bp));
  if (report.first_half_violated()) return {first, Half::First, first};
  if (report.second_half_violated()) {
    const Region second = classify_quad(second_quad(bp));
    return {second, Half::Second, second};
  }
  return {Region::Biseparable, Half::None, first};
}

// ---------------------------------------------------------------------------

namespace {

double axis_node(double axis_max, int i, int resolution) {
  return axis_max * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

template <typename Fn>
Polyline sample_curve(std::string name, double axis_max, int resolution, Fn&& y_of_x) {
  Polyline line{std::move(name), {}};
  for (int i = 0; i < resolution; ++i) {
    const double x = axis_node(axis_max, i, resolution);
    const double y = y_of_x(x);
    if (std::isfinite(y) && y >= 0 && y <= axis_max) line.points.push_back({x, y});
  }
  return line;
}

Polyline vertical(std::string name, double x, double axis_max) {
  Polyline line{std::move(name), {}};
  if (x >= 0 && x <= axis_max) {
    line.points.push_back({x, 0});
    line.points.push_back({x, axis_max});
  }
  return line;
}

}  // namespace

RegionGrid region_grid(double p0, double axis_max, int resolution, GridPlane plane,
                       double fixed) {
  if (resolution < 2) throw Error(ErrorCode::DomainError, "grid resolution must be at least 2");
  if (!(axis_max > 0)) throw Error(ErrorCode::DomainError, "axis_max must be positive");

  RegionGrid grid;
  grid.p0 = p0;
  grid.plane = plane;
  grid.fixed = fixed;
  grid.axis_max = axis_max;
  grid.resolution = resolution;
  grid.cells.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));

  for (int iy = 0; iy < resolution; ++iy) {
    const double y = axis_node(axis_max, iy, resolution);
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = axis_node(axis_max, ix, resolution);
      const Quad q = plane == GridPlane::P3P7 ? Quad{p0, x, fixed, y} : Quad{p0, x, y, fixed};
      GridCell cell{x, y, std::nullopt};
      try {
        cell.region = classify_quad(q);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidQuad) throw;
      }
      grid.cells.push_back(cell);
    }
  }

  const double pair_x = 0.5 - p0;
  if (plane == GridPlane::P3P7) {
    grid.boundaries.push_back(vertical("p0+p3=1/2", pair_x, axis_max));
    grid.boundaries.push_back(sample_curve("p7=p_AB", axis_max, resolution, [&](double x) {
      return thresholds({p0, x, 0, 0}).ab_border;
    }));
    grid.boundaries.push_back(
        sample_curve("p7=p3", axis_max, resolution, [](double x) { return x; }));
    grid.boundaries.push_back(sample_curve("2p0+p3+p7=1", axis_max, resolution,
                                           [&](double x) { return 1 - 2 * p0 - x; }));
    if (pair_x >= 0 && pair_x <= axis_max) {
      // The A/B border reaches p7 = p3 exactly where p0 + p3 = 1/2.
      grid.intersections.push_back({"p7=p_AB & p7=p3", pair_x, pair_x});
    }
  } else {
    grid.boundaries.push_back(vertical("p0+p3=1/2", pair_x, axis_max));
    grid.boundaries.push_back(sample_curve("p4=p_A'A''", axis_max, resolution, [&](double x) {
      return thresholds({p0, x, 0, 0}).a_layer_border;
    }));
    grid.boundaries.push_back(
        sample_curve("p4=p0", axis_max, resolution, [&](double) { return p0; }));
    grid.boundaries.push_back(sample_curve("p4=1-p0-2p3", axis_max, resolution,
                                           [&](double x) { return 1 - p0 - 2 * x; }));
    if (pair_x >= 0 && pair_x <= axis_max && p0 <= axis_max) {
      grid.intersections.push_back({"p4=p_A'A'' & p4=p0", pair_x, p0});
    }
  }
  return grid;
}

std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::I: return "I";
    case Surface::II: return "II";
    case Surface::III: return "III";
    case Surface::IV: return "IV";
    case Surface::V: return "V";
    case Surface::VI: return "VI";
    case Surface::VII: return "VII";
    case Surface::Cap73: return "l7=3l3";
  }
  return "?";
}

std::vector<Surface> SurfacePoint::surfaces() const {
  std::vector<Surface> out;
  for (Surface s : {Surface::I, Surface::II, Surface::III, Surface::IV, Surface::V, Surface::VI,
                    Surface::VII, Surface::Cap73}) {
    if (on(s)) out.push_back(s);
  }
  return out;
}

SurfacePoint classify_surface_point(double l0, double l3, double l7, double l4, double tol) {
  SurfacePoint pt{l3, l7, l4, false, 0};
  struct Border {
    Surface id;
    double margin;
  };
  const Border borders[] = {
      {Surface::I, l0 + l3 - 0.5},
      {Surface::II, 2 * l0 + l3 + l7 - 1},
      {Surface::IV, l0 + 2 * l3 + l4 - 1},
      {Surface::VI, l0 + l3 + l4 + l7 - 1},
      {Surface::VII, l4 - 3 * l0},
      {Surface::Cap73, l7 - 3 * l3},
  };
  bool feasible = l3 >= -tol && l7 >= -tol && l4 >= -tol;
  for (const Border& b : borders) {
    feasible = feasible && b.margin <= tol;
    if (std::abs(b.margin) <= tol) pt.surface_mask |= std::uint16_t(1u << static_cast<int>(b.id));
  }
  pt.feasible = feasible;
  if (pt.on(Surface::I) && pt.on(Surface::II)) {
    pt.surface_mask |= std::uint16_t(1u << static_cast<int>(Surface::III));
  }
  if (pt.on(Surface::I) && pt.on(Surface::IV)) {
    pt.surface_mask |= std::uint16_t(1u << static_cast<int>(Surface::V));
  }
  return pt;
}

SurfaceGrid bisep_surface(double l0, int resolution) {
  if (!(l0 >= 0 && l0 <= 1)) throw Error(ErrorCode::DomainError, "l0 must lie in [0, 1]");
  if (resolution < 2) throw Error(ErrorCode::DomainError, "grid resolution must be at least 2");
  const double extent = 1 - l0;
  const double step = extent / (resolution - 1);
  SurfaceGrid grid;
  grid.l0 = l0;
  grid.resolution = resolution;
  grid.points.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
  for (int i4 = 0; i4 < resolution; ++i4) {
    for (int i7 = 0; i7 < resolution; ++i7) {
      for (int i3 = 0; i3 < resolution; ++i3) {
        grid.points.push_back(classify_surface_point(l0, axis_node(extent, i3, resolution),
                                                     axis_node(extent, i7, resolution),
                                                     axis_node(extent, i4, resolution), step));
      }
    }
  }
  return grid;
}

}  // namespace clusterent
