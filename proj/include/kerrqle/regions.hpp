#pragma once

// Boundary curves in the (a, r) plane and point classification against them.
//
//   r_+(a)   outer horizon
//   r_k(a)   real root of r^3 + a^2 r - 6 a^2 m; K > 0 everywhere iff r > r_k
//   sqrt(3)a k0 - k > 0 everywhere iff r > sqrt(3) a
//   r_h(a)   r_+ for a <= sqrt(3)m/2, sqrt(3) a beyond
//
// All three curves meet at (a, r) = (sqrt(3)m/2, 3m/2).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "kerrqle/kerr_metric.hpp"

namespace kerrqle {

inline constexpr double kDefaultBoundaryTol = 1e-9;

inline double r_plus(const KerrParams& p) {
  const double m = p.m(), a = p.a();
  return m + std::sqrt(std::max(0.0, m * m - a * a));
}

/// Cubic whose unique real root is r_k.
inline double embedding_cubic(const KerrParams& p, double r) {
  const double a2 = p.a() * p.a();
  return r * r * r + a2 * r - 6.0 * a2 * p.m();
}

/// Closed-form Cardano root polished by one Newton step.
inline double r_k(const KerrParams& p) {
  const double m = p.m(), a = p.a();
  if (a == 0.0) return 0.0;
  const double a2 = a * a;
  double r;
  if (a < 1e-8 * m) {
    r = std::cbrt(6.0 * a2 * m);
  } else {
    const double t = std::cbrt(27.0 * a2 * m +
                               std::sqrt(3.0) * std::sqrt(243.0 * a2 * a2 * m * m + a2 * a2 * a2));
    r = -a2 / (std::cbrt(3.0) * t) + t / std::cbrt(9.0);
  }
  const double slope = 3.0 * r * r + a2;
  return r - embedding_cubic(p, r) / slope;
}

inline double sqrt3_a(const KerrParams& p) { return std::sqrt(3.0) * p.a(); }

inline double r_h(const KerrParams& p) {
  return p.a() <= std::sqrt(3.0) * p.m() / 2.0 ? r_plus(p) : sqrt3_a(p);
}

/// Static limit r = m + sqrt(m^2 - a^2 cos^2 theta). Informational only.
inline double ergosphere_radius(const KerrParams& p, double theta) {
  const double c = std::cos(theta);
  return p.m() + std::sqrt(p.m() * p.m() - p.a() * p.a() * c * c);
}

enum class RegionClass {
  InsideOrOnHorizon,
  NotEmbeddable,
  TriangleLike,
  PositiveEverywhere,
  BoundaryCurve,
};

inline std::string_view to_string(RegionClass c) {
  switch (c) {
    case RegionClass::InsideOrOnHorizon: return "inside_horizon";
    case RegionClass::NotEmbeddable: return "not_embeddable";
    case RegionClass::TriangleLike: return "triangle_like";
    case RegionClass::PositiveEverywhere: return "positive_everywhere";
    case RegionClass::BoundaryCurve: return "boundary_curve";
  }
  return "unknown";
}

/// Classify a constant-radius surface. Points within tol of r_+, r_k or
/// sqrt(3)a (on or above the horizon band) are BoundaryCurve; the degenerate
/// corner a = sqrt(3)m/2 of the triangle-like region falls in that band.
inline RegionClass classify(const KerrParams& p, double r, double tol = kDefaultBoundaryTol) {
  if (!(r > 0.0)) throw DomainError("classify: radius must be positive");
  const double rp = r_plus(p);
  if (r < rp - tol) return RegionClass::InsideOrOnHorizon;
  const double rk = r_k(p);
  const double s3a = sqrt3_a(p);
  if (std::abs(r - rp) <= tol || std::abs(r - rk) <= tol || std::abs(r - s3a) <= tol) {
    return RegionClass::BoundaryCurve;
  }
  if (r < rk) return RegionClass::NotEmbeddable;
  if (r < s3a) return RegionClass::TriangleLike;
  return RegionClass::PositiveEverywhere;
}

struct CurveRow {
  double a;
  double r_plus;
  double r_k;
  double sqrt3a;
};

/// Boundary-curve table for spins a_grid (absolute units, each in [0, m]).
inline std::vector<CurveRow> boundary_curve_table(double m, std::span<const double> a_grid) {
  std::vector<CurveRow> rows;
  rows.reserve(a_grid.size());
  for (double a : a_grid) {
    const KerrParams p(m, a);
    rows.push_back({a, r_plus(p), r_k(p), sqrt3_a(p)});
  }
  return rows;
}

}  // namespace kerrqle
