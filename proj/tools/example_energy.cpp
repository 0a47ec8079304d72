// Library walk-through: geometry and energy of one surface.

#include <cstdio>
#include <numbers>
#include <string>

#include "kerrqle/energy.hpp"
#include "kerrqle/mass_relations.hpp"
#include "kerrqle/regions.hpp"
#include "kerrqle/surface_geometry.hpp"

int main() {
  using namespace kerrqle;
  const KerrParams bh(1.0, 0.9);
  const SurfaceSpec s(bh, 1.7);

  std::printf("r_+ = %.6f  r_k = %.6f  sqrt(3)a = %.6f  class = %s\n", r_plus(bh), r_k(bh), sqrt3_a(bh),
              std::string(to_string(classify(bh, s.r))).c_str());
  std::printf("K(pole) = %.6f  k0 - k at equator = %.6f\n", pole_curvature(s),
              mean_curvature_difference(s, std::numbers::pi / 2));

  const auto e = critical_value(s);
  std::printf("E(0,0) = %.9f +- %.1e   M_ir = %.6f\n", e.value, e.error_estimate, mir_from_a(bh));

  const double eps[] = {0.1, 0.2};
  for (const auto& row : minimality_probe(s, PerturbationFamily::SinCos, eps)) {
    std::printf("eps = %.2f  E(y) - E(0) = %.3e\n", row.eps, row.delta_E);
  }
  return 0;
}
