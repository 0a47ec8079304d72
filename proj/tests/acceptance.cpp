// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "kerrqle/energy.hpp"
#include "kerrqle/kerr_metric.hpp"
#include "kerrqle/mass_relations.hpp"
#include "kerrqle/regions.hpp"
#include "kerrqle/surface_geometry.hpp"
#include "oracles.hpp"

using namespace kerrqle;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string format(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

QleResult energy(double m, double a, double r) { return critical_value(SurfaceSpec(KerrParams(m, a), r)); }

void criterion1() {
  const double rk = r_k(KerrParams(1, 1));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const KerrParams p(1, i / 999.0);
    worst = std::max(worst, std::abs(embedding_cubic(p, r_k(p))));
  }
  const bool ok = std::abs(rk - 1.63437) <= 1e-4 && worst <= 1e-12;
  report(1, "r_k reproduction", ok, format("r_k(1,1)=%.8f, max cubic residual over 1000 spins=%.3g", rk, worst));
}

void criterion2() {
  const KerrParams p(1, kSqrt3 / 2);
  const double rp = r_plus(p), rk = r_k(p), s3 = sqrt3_a(p);
  const double dev = std::max({std::abs(rp - 1.5), std::abs(rk - 1.5), std::abs(s3 - 1.5)});
  report(2, "triple intersection", dev <= 1e-12,
         format("r_+=%.16g r_k=%.16g sqrt3a=%.16g, max |x-3/2|=%.3g", rp, rk, s3, dev));
}

void criterion3() {
  bool ok = true;
  double worst = 0.0, slowest = 0.0;
  for (double r : {2.5, 3.0, 5.0, 10.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const double E = energy(1, 0, r).value;
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const double dev = std::abs(E - oracle::schwarzschild_brown_york(1, r));
    worst = std::max(worst, dev);
    ok = ok && dev <= 1e-6;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const double E2 = energy(1, 0, 2).value;
  slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  ok = ok && std::abs(E2 - 2.0) <= 1e-3 && slowest < 1.0;
  report(3, "Schwarzschild energy", ok,
         format("max |E - r(1-sqrt(1-2/r))|=%.3g, E(r=2)=%.9f, slowest point %.3g s", worst, E2, slowest));
}

void criterion4() {
  int violations = 0, points = 0, k_points = 0;
  for (int i = 0; i < 50; ++i) {
    const double a = i / 49.0;
    const KerrParams p(1, a);
    for (int j = 0; j < 50; ++j) {
      const double r = r_plus(p) + 0.005 + 2.5 * j / 49.0;
      const auto scan = scan_signs(SurfaceSpec(p, r), 2000);
      ++points;
      if ((scan.min_K > 0.0) != (r > r_k(p))) ++violations;
      if (scan.min_K > 0.0) {
        ++k_points;
        if ((scan.min_k0_minus_k > 0.0) != (r > sqrt3_a(p))) ++violations;
      }
    }
  }
  report(4, "curvature sign thresholds", violations == 0,
         format("%g grid points (%g with K>0), %g violations", points, k_points, violations));
}

void criterion5() {
  bool ok = true;
  double worst_ratio = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double a = i / 9.0;
    const KerrParams p(1, a);
    const double base = std::max(r_plus(p), r_k(p));
    for (int j = 0; j < 10; ++j) {
      const double r = base + 0.02 + 0.5 * j;
      const SurfaceSpec s(p, r);
      const auto e = critical_value(s);
      const auto by = brown_york_mass(s);
      const double tol = 2.0 * (e.error_estimate + by.error_estimate);
      const double diff = std::abs(e.value - by.value);
      worst_ratio = std::max(worst_ratio, diff / tol);
      ok = ok && diff <= tol;
    }
  }
  report(5, "two-route Brown-York equality", ok,
         format("100 points, max |E - m_BY| / (2 x combined estimate)=%.3g", worst_ratio));
}

void criterion6() {
  bool ok = true;
  int bad_r = 0, bad_a = 0, bad_mir = 0, nonpositive = 0, rows = 0;
  for (int i = 0; i <= 5; ++i) {
    const double a = 0.2 * i;
    const double start = std::max(2.0, r_k(KerrParams(1, a)) + 0.01);
    double prev = INFINITY;
    for (int j = 0;; ++j) {
      const double r = start + 0.1 * j;
      if (r > 10.0 + 1e-9) break;
      const double E = energy(1, a, r).value;
      if (!(E < prev)) ++bad_r;
      prev = E;
      ++rows;
    }
  }
  for (double r : {2.0, 3.0, 5.0}) {
    double prev = INFINITY;
    for (int i = 0; i <= 20; ++i) {
      const double E = energy(1, 0.05 * i, r).value;
      if (!(E < prev)) ++bad_a;
      prev = E;
    }
    prev = -INFINITY;
    for (int i = 0; i <= 20; ++i) {
      const double mir = 1.0 / std::numbers::sqrt2 + (1.0 - 1.0 / std::numbers::sqrt2) * i / 20.0;
      const double E = energy(1, a_from_mir(1, mir), r).value;
      if (!(E > prev)) ++bad_mir;
      prev = E;
    }
  }
  // Triangle-like region: a in (sqrt3/2, 1], r_k(a) < r < sqrt3 a.
  double min_tri = INFINITY;
  for (int i = 0; i < 5; ++i) {
    const double a = kSqrt3 / 2 + (1 - kSqrt3 / 2) * (i + 1) / 5.0;
    const KerrParams p(1, a);
    for (int j = 0; j < 4; ++j) {
      const double r = r_k(p) + (sqrt3_a(p) - r_k(p)) * (j + 0.5) / 4.0;
      const double E = energy(1, a, r).value;
      min_tri = std::min(min_tri, E);
      if (!(E > 0.0)) ++nonpositive;
    }
  }
  ok = bad_r == 0 && bad_a == 0 && bad_mir == 0 && nonpositive == 0;
  report(6, "energy monotonicity", ok,
         format("r-scan steps not decreasing=%g over %g points; a-scan=%g; M_ir-scan=%g", bad_r, rows, bad_a,
                bad_mir) +
             format("; triangle region min E=%.6f over 20 points", min_tri));
}

void criterion7() {
  double worst = 0.0;
  std::string vals;
  for (double a : {0.0, 0.5, 1.0}) {
    const double E = energy(1, a, 100).value;
    worst = std::max(worst, std::abs(E - 1.0));
    vals += format("E(a=%.1f)=%.6f ", a, E);
  }
  report(7, "ADM limit", worst <= 0.02, vals + format("max |E - m|=%.4g", worst));
}

void criterion8() {
  struct Case {
    double a, r;
  };
  std::vector<double> eps;
  for (int i = 0; i <= 6; ++i) eps.push_back(0.05 * i);
  bool ok = true;
  double min_margin = INFINITY, min_c2 = INFINITY;
  for (auto c : {Case{0.3, 3}, Case{0.5, 2}, Case{0.9, 1.7}}) {
    if (!(c.r > r_h(KerrParams(1, c.a)))) ok = false;
    for (auto fam : {PerturbationFamily::SinCos, PerturbationFamily::Sin2Sin}) {
      const auto rows = minimality_probe(SurfaceSpec(KerrParams(1, c.a), c.r), fam, eps);
      // Least-squares fit delta_E = c0 + c1 eps + c2 eps^2.
      double S[3][4] = {};
      for (const auto& row : rows) {
        if (!row.admissible) {
          ok = false;
          continue;
        }
        min_margin = std::min(min_margin, row.delta_E + 2 * row.error_estimate);
        if (row.delta_E < -2 * row.error_estimate) ok = false;
        const double b[3] = {1.0, row.eps, row.eps * row.eps};
        for (int p = 0; p < 3; ++p) {
          for (int q = 0; q < 3; ++q) S[p][q] += b[p] * b[q];
          S[p][3] += b[p] * row.delta_E;
        }
      }
      for (int p = 0; p < 3; ++p) {
        for (int q = p + 1; q < 3; ++q) {
          const double f = S[q][p] / S[p][p];
          for (int k = p; k < 4; ++k) S[q][k] -= f * S[p][k];
        }
      }
      double x[3];
      for (int p = 2; p >= 0; --p) {
        double v = S[p][3];
        for (int k = p + 1; k < 3; ++k) v -= S[p][k] * x[k];
        x[p] = v / S[p][p];
      }
      min_c2 = std::min(min_c2, x[2]);
      if (x[2] < 0.0) ok = false;
    }
  }
  report(8, "minimality probe", ok,
         format("6 probes x 7 eps, min (delta_E + 2 err)=%.3g, min eps^2 coefficient=%.4f", min_margin, min_c2));
}

void criterion9() {
  // Gauss-Bonnet over 10 embeddable surfaces.
  double gb_worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double a = i / 9.0;
    const KerrParams p(1, a);
    const double r = std::max(r_plus(p), r_k(p)) + 0.05 + 0.3 * i;
    const SurfaceSpec s(p, r);
    auto f = [&](double th) {
      const auto mf = metric_at(p, r, th);
      return gaussian_curvature(s, th) * std::sqrt(mf.H * mf.Sigma2);
    };
    gb_worst = std::max(gb_worst, std::abs(oracle::simpson(f, 0, kPi, 4000) - 2.0));
  }
  // L_sigma = H_sigma K.
  double l_worst = 0.0;
  for (double a : {0.2, 0.6, 0.95}) {
    const SurfaceSpec s(KerrParams(1, a), std::max(r_plus(KerrParams(1, a)), r_k(KerrParams(1, a))) + 0.2);
    auto L_of = [&](double sg) { return L_value(s, std::asin(std::sqrt(sg))); };
    for (int k = 1; k < 20; ++k) {
      const double sg = k / 20.0, th = std::asin(std::sqrt(sg));
      const double rhs = metric_derivs_at(s.params, s.r, th).H_sigma * gaussian_curvature(s, th);
      l_worst = std::max(l_worst, std::abs(oracle::central_diff(L_of, sg) - rhs) / std::abs(rhs));
    }
  }
  // Embedding round trip.
  double rt_worst = 0.0;
  for (double a : {0.0, 0.5, 0.9, 1.0}) {
    const KerrParams p(1, a);
    const SurfaceSpec s(p, std::max(r_plus(p), r_k(p)) + 0.1);
    const auto grid = uniform_theta_grid(3144);
    const auto prof = embedding_profile(s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto mf = metric_at(p, s.r, grid[i]);
      const double ds2 = prof.rho_theta[i] * prof.rho_theta[i] + prof.z_theta[i] * prof.z_theta[i];
      rt_worst = std::max(rt_worst, std::abs(ds2 - mf.Sigma2) / mf.Sigma2);
      rt_worst = std::max(rt_worst, std::abs(prof.rho[i] * prof.rho[i] - mf.H) / mf.Sigma2);
    }
  }
  // omega^0_12 on 20 x 20 off-axis (r, theta) grids.
  double w_worst = 0.0;
  for (double a : {0.3, 0.7, 1.0}) {
    const KerrParams p(1, a);
    for (int i = 0; i < 20; ++i) {
      const double r = r_plus(p) + 0.05 + 0.5 * i;
      for (int j = 0; j < 20; ++j) {
        const double th = kPi * (j + 0.5) / 20.0;
        w_worst = std::max(w_worst, std::abs(omega012_at(p, r, th)));
      }
    }
  }
  const bool ok = gb_worst <= 1e-5 && l_worst <= 1e-6 && rt_worst <= 1e-8 && w_worst <= 1e-8;
  report(9, "geometry invariants", ok,
         format("Gauss-Bonnet max dev=%.3g; L_sigma rel err=%.3g; embedding metric err=%.3g; max |omega012|=%.3g",
                gb_worst, l_worst, rt_worst, w_worst));
}

void criterion10() {
  struct Case {
    double a, r;
  };
  bool ok = true;
  double worst_ratio = 0.0;
  for (auto c : {Case{0.0, 5.0}, Case{0.6, 4.4}, Case{1.2, 7.0}, Case{1.8, 3.6}, Case{2.0, 4.0}}) {
    const auto e2 = energy(2, c.a, c.r);
    const auto e1 = energy(1, c.a / 2, c.r / 2);
    const double tol = 2.0 * (e2.error_estimate + 2.0 * e1.error_estimate);
    const double diff = std::abs(e2.value - 2.0 * e1.value);
    worst_ratio = std::max(worst_ratio, diff / tol);
    ok = ok && diff <= tol;
  }
  report(10, "mass scaling", ok, format("5 samples, max |E(2,a,r) - 2E(1,a/2,r/2)| / tol=%.3g", worst_ratio));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion %zu (exception): %s\n", i + 1, e.what());
      ++g_failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", g_failures, checks.size());
  return g_failures == 0 ? 0 : 1;
}
