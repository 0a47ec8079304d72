#pragma once

// Irreducible mass and horizon area.
//
//   a   = 2 M_ir sqrt(1 - M_ir^2 / m^2)
//   A   = 4 pi (r_+^2 + a^2) = 8 pi m r_+ = 16 pi M_ir^2
//
// The quartic relation between a and M_ir has two branches; the physical one,
// m/sqrt(2) <= M_ir <= m, is M_ir = sqrt(m r_+ / 2).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kerrqle/kerr_metric.hpp"
#include "kerrqle/regions.hpp"

namespace kerrqle {

struct MassPoint {
  double m;
  double a;
  double M_ir;
  double area;
};

inline double mir_from_a(const KerrParams& p) { return std::sqrt(p.m() * r_plus(p) / 2.0); }

inline double a_from_mir(double m, double M_ir) {
  if (!(m > 0.0)) throw DomainError("a_from_mir: mass must be positive");
  if (!(M_ir >= m / std::numbers::sqrt2 && M_ir <= m)) {
    std::ostringstream os;
    os << "a_from_mir: M_ir=" << M_ir << " outside [m/sqrt(2), m]";
    throw DomainError(os.str());
  }
  const double ratio = M_ir / m;
  return std::min(m, 2.0 * M_ir * std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
}

inline double horizon_area(const KerrParams& p) { return 8.0 * std::numbers::pi * p.m() * r_plus(p); }

inline MassPoint mass_point(const KerrParams& p) {
  return {p.m(), p.a(), mir_from_a(p), horizon_area(p)};
}

}  // namespace kerrqle
