#pragma once

// Quasi-local energy of the constant-(t, r) surface as a functional of the two
// gauge functions x = T_r and y = T_theta left free by 4D isometric matching:
//
//   E(x, y) = 1/4 Int_0^pi B(x, y) dtheta,
//   alpha = sqrt(x^2 Sigma^2 + R^2 l),  beta = sqrt(4 H l - H_theta^2),  l = y^2 + Sigma^2.
//
// B is evaluated with q = 1/R = sqrt(Delta)/Sigma and alpha_hat = q alpha, so
// every term stays finite on the outer horizon where R diverges. beta^2 is
// assembled as 4 H y^2 + 4 H Sigma^2 L with L from the pole-stable polynomial
// form; the raw difference 4 H l - H_theta^2 cancels catastrophically near the
// axis. B vanishes at theta = 0, pi and the endpoint samples are set to 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kerrqle/kerr_metric.hpp"
#include "kerrqle/quadrature.hpp"
#include "kerrqle/regions.hpp"
#include "kerrqle/surface_geometry.hpp"

namespace kerrqle {

inline constexpr double kDefaultDtheta = 1e-3;

struct Auxiliaries {
  double alpha;  // infinite on the horizon
  double beta;
  double l;
};

struct QleResult {
  double value;
  double grid_spacing;
  QuadratureRule rule;
  double error_estimate;
};

/// Sampled gauge pair on a uniform grid over [0, pi] with derivative samples.
struct GaugeFunctions {
  std::vector<double> theta;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> x_theta;
  std::vector<double> y_theta;

  std::size_t intervals() const noexcept { return theta.size() - 1; }
  double spacing() const noexcept { return std::numbers::pi / static_cast<double>(intervals()); }
};

/// Three-point finite differences: central in the interior, second-order
/// one-sided at the two end nodes.
inline std::vector<double> differentiate_samples(std::span<const double> t, std::span<const double> v) {
  const std::size_t n = t.size();
  if (n < 3 || v.size() != n) throw DomainError("differentiate_samples: need >= 3 matching samples");
  std::vector<double> d(n);
  auto three_point = [&](std::size_t i0, std::size_t at) {
    const double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2], x = t[at];
    return v[i0] * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
           v[i0 + 1] * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
           v[i0 + 2] * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
  };
  d[0] = three_point(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three_point(i - 1, i);
  d[n - 1] = three_point(n - 3, n - 1);
  return d;
}

namespace detail {

inline void validate_gauge(const GaugeFunctions& g) {
  const std::size_t n = g.theta.size();
  if (n < 5 || (n - 1) % 4 != 0) {
    throw DomainError("GaugeFunctions: interval count must be a positive multiple of 4");
  }
  if (g.x.size() != n || g.y.size() != n || g.x_theta.size() != n || g.y_theta.size() != n) {
    throw DomainError("GaugeFunctions: sample arrays must match the grid");
  }
  const double h = g.spacing();
  if (g.theta.front() != 0.0 || g.theta.back() != std::numbers::pi) {
    throw DomainError("GaugeFunctions: grid must start at 0 and end at pi");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((g.theta[i] - g.theta[i - 1]) - h) > 1e-9 * h) {
      throw DomainError("GaugeFunctions: grid must be uniform and increasing");
    }
  }
  const double scale = 1.0 + std::abs(g.y_theta.front()) + std::abs(g.y_theta.back());
  if (std::abs(g.y.front()) > 1e-10 * scale || std::abs(g.y.back()) > 1e-10 * scale) {
    throw DomainError("GaugeFunctions: y must vanish at the poles");
  }
}

// Metric data at one interior point, physical units.
struct PointData {
  double H, sqrtH, H_th, H_thth;
  double Sigma2, Sigma, Sigma_th;
  double HSigma2_r;
  double q;          // 1/R
  double R_th_over_R;
  double HSigma2L;   // H Sigma^2 L
  double Delta;
  double sigma;
};

inline PointData point_data(const SurfaceSpec& s, double theta) {
  const auto f = metric_at(s.params, s.r, theta);
  const auto d = metric_derivs_at(s.params, s.r, theta);
  if (f.Delta < 0.0) {
    std::ostringstream os;
    os << "energy: r=" << s.r << " lies inside the outer horizon";
    throw HorizonError(os.str());
  }
  PointData p{};
  p.H = f.H;
  p.sqrtH = std::sqrt(f.H);
  p.H_th = d.H_th;
  p.H_thth = d.H_thth;
  p.Sigma2 = f.Sigma2;
  p.Sigma = std::sqrt(f.Sigma2);
  p.Sigma_th = d.Sigma2_th / (2.0 * p.Sigma);
  p.HSigma2_r = d.H_r * f.Sigma2 + f.H * d.Sigma2_r;
  p.q = std::sqrt(f.Delta / f.Sigma2);
  // R^2 = Sigma^2 / Delta with Delta independent of theta.
  p.R_th_over_R = d.Sigma2_th / (2.0 * f.Sigma2);
  p.HSigma2L = f.H * f.Sigma2 * L_value(s, theta);
  p.Delta = f.Delta;
  p.sigma = f.sigma;
  return p;
}

inline double beta_from(const PointData& p, double y, double theta) {
  const double beta2 = 4.0 * p.H * y * y + 4.0 * p.HSigma2L;
  if (!(beta2 > 0.0)) {
    std::ostringstream os;
    os << "inadmissible gauge: 4 H l - H_theta^2 <= 0 at theta=" << theta;
    throw InadmissibleGaugeError(os.str(), theta);
  }
  return std::sqrt(beta2);
}

inline double integrand(const PointData& p, double theta, double x, double y, double x_th, double y_th) {
  const double l = y * y + p.Sigma2;
  const double beta = beta_from(p, y, theta);
  const double ahat = std::sqrt(p.q * p.q * x * x * p.Sigma2 + l);
  const double inv_alpha = p.q / ahat;

  const double t1 = -ahat * p.q * p.HSigma2_r / (2.0 * p.sqrtH * p.Sigma2);
  const double t2 = -p.sqrtH * ((p.H_thth - 2.0 * l) / beta + p.R_th_over_R * x * y * inv_alpha -
                                (x * y * y * y * inv_alpha / (l * p.Sigma) + p.H_th * p.Sigma / (l * beta)) *
                                    p.Sigma_th);
  const double t3 = p.sqrtH * y * x_th * inv_alpha;
  const double t4 = p.sqrtH * y * (p.H_th / (l * beta) - x * y * inv_alpha / l) * y_th;
  return t1 + t2 + t3 + t4;
}

inline bool is_pole(double theta) { return theta <= 0.0 || theta >= std::numbers::pi; }

}  // namespace detail

/// Zero gauge x = y = 0 on a uniform grid with `intervals` steps.
inline GaugeFunctions zero_gauge(std::size_t intervals) {
  GaugeFunctions g;
  g.theta = uniform_theta_grid(intervals);
  g.x.assign(g.theta.size(), 0.0);
  g.y = g.x;
  g.x_theta = g.x;
  g.y_theta = g.x;
  return g;
}

/// Gauge from samples; derivatives by differentiate_samples.
inline GaugeFunctions sampled_gauge(std::vector<double> theta, std::vector<double> x, std::vector<double> y) {
  GaugeFunctions g;
  g.x_theta = differentiate_samples(theta, x);
  g.y_theta = differentiate_samples(theta, y);
  g.theta = std::move(theta);
  g.x = std::move(x);
  g.y = std::move(y);
  return g;
}

/// alpha, beta, l at an interior point. alpha is +inf on the horizon.
inline Auxiliaries auxiliaries(const SurfaceSpec& s, double theta, double x, double y) {
  if (detail::is_pole(theta)) throw AxisError("auxiliaries: theta must lie strictly inside (0, pi)");
  const auto p = detail::point_data(s, theta);
  Auxiliaries aux{};
  aux.l = y * y + p.Sigma2;
  aux.beta = detail::beta_from(p, y, theta);
  aux.alpha = p.q == 0.0 ? std::numeric_limits<double>::infinity()
                         : std::sqrt(p.q * p.q * x * x * p.Sigma2 + aux.l) / p.q;
  return aux;
}

/// The energy density B(x, y) at an interior theta; 0 at the poles.
inline double integrand_B(const SurfaceSpec& s, double theta, double x, double y, double x_theta,
                          double y_theta) {
  if (detail::is_pole(theta)) return 0.0;
  return detail::integrand(detail::point_data(s, theta), theta, x, y, x_theta, y_theta);
}

/// E(x, y) = 1/4 Int B dtheta with a grid-halving error estimate.
inline QleResult qle(const SurfaceSpec& s, const GaugeFunctions& g, QuadratureRule rule = QuadratureRule::Trapezoid) {
  detail::validate_gauge(g);
  const std::size_t n = g.theta.size();
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    b[i] = integrand_B(s, g.theta[i], g.x[i], g.y[i], g.x_theta[i], g.y_theta[i]);
  }
  const double h = g.spacing();
  const auto q = integrate_uniform(b, h, rule);
  return {0.25 * q.value, h, rule, 0.25 * q.error_estimate};
}

/// E(0, 0). Requires r >= r_+ and an embeddable surface (r > r_k). The
/// horizon itself is admitted; there k = 0.
inline QleResult critical_value(const SurfaceSpec& s, QuadratureRule rule = QuadratureRule::Trapezoid,
                                double dtheta = kDefaultDtheta) {
  if (s.r < r_plus(s.params)) {
    std::ostringstream os;
    os << "critical_value: r=" << s.r << " lies inside the outer horizon";
    throw HorizonError(os.str());
  }
  detail::require_embeddable(s, "critical_value");
  return qle(s, zero_gauge(interval_count(std::numbers::pi, dtheta)), rule);
}

/// Brown-York mass 1/(8 pi) Int (k0 - k) dA = 1/4 Int (k0 - k) sqrt(H) Sigma dtheta,
/// integrated from the closed-form curvatures. Requires r > max(r_+, r_k).
inline QleResult brown_york_mass(const SurfaceSpec& s, QuadratureRule rule = QuadratureRule::Simpson,
                                 double dtheta = kDefaultDtheta) {
  detail::require_outside_horizon(s, "brown_york_mass");
  detail::require_embeddable(s, "brown_york_mass");
  const std::size_t n = interval_count(std::numbers::pi, dtheta);
  const auto grid = uniform_theta_grid(n);
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double th = grid[i];
    const auto f = metric_at(s.params, s.r, th);
    v[i] = mean_curvature_difference(s, th) * std::sqrt(f.H * f.Sigma2);
  }
  const double h = std::numbers::pi / static_cast<double>(n);
  const auto q = integrate_uniform(v, h, rule);
  return {0.25 * q.value, h, rule, 0.25 * q.error_estimate};
}

/// Residuals (right-hand side minus derivative) of both Euler-Lagrange
/// equations at interior grid nodes.
struct ElResidual {
  std::vector<double> theta;
  std::vector<double> res_y;
  std::vector<double> res_x;
};

inline ElResidual el_residual(const SurfaceSpec& s, const GaugeFunctions& g) {
  detail::validate_gauge(g);
  ElResidual out;
  for (std::size_t i = 1; i + 1 < g.theta.size(); ++i) {
    const double th = g.theta[i];
    const auto p = detail::point_data(s, th);
    if (!(p.Delta > 0.0)) throw HorizonError("el_residual: R is singular on the horizon");
    const double x = g.x[i], y = g.y[i];
    const double R2 = 1.0 / (p.q * p.q);
    const double l = y * y + p.Sigma2;
    const double alpha = std::sqrt(x * x * p.Sigma2 + R2 * l);
    const double beta = detail::beta_from(p, y, th);
    const double rhs_y = -p.HSigma2_r / (2.0 * p.H * R2) * x -
                         (p.Sigma * p.H_th - 2.0 * p.H * p.Sigma_th) / (2.0 * p.H * p.Sigma) * y;
    const double rhs_x = p.R_th_over_R * x +
                         (p.HSigma2_r / (2.0 * p.H * p.Sigma2) - (alpha * beta + x * y * p.H_th) / (2.0 * p.H * l)) * y;
    out.theta.push_back(th);
    out.res_y.push_back(rhs_y - g.y_theta[i]);
    out.res_x.push_back(rhs_x - g.x_theta[i]);
  }
  return out;
}

/// Solve the first Euler-Lagrange equation for x given y and y_theta:
///   x = -(2 H R^2 / (Sigma^2 H)_r) [y_theta + (H_theta/(2H) - Sigma_theta/Sigma) y].
/// At the poles y/sin(theta) is replaced by its limit y_theta/cos(theta).
inline std::vector<double> x_from_y(const SurfaceSpec& s, std::span<const double> theta, std::span<const double> y,
                                    std::span<const double> y_theta) {
  if (theta.size() != y.size() || y.size() != y_theta.size()) {
    throw DomainError("x_from_y: sample arrays must match");
  }
  const double m = s.params.m();
  const double a = s.a_unit(), r = s.r_unit(), a2 = a * a;
  const double A = a2 + r * r;
  const double Delta = r * r - 2.0 * r + a2;
  if (!(Delta > 0.0)) throw HorizonError("x_from_y: requires r outside the outer horizon");
  std::vector<double> x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double th = theta[i];
    const double sigma = detail::sin2(th);
    const double D = A - a2 * sigma;
    const double P = A * A - Delta * a2 * sigma;
    const double P_r = 4.0 * r * A - 2.0 * (r - 1.0) * a2 * sigma;
    if (P_r == 0.0) throw DomainError("x_from_y: (Sigma^2 H)_r vanishes");
    const double H_s = (A * A * A - 2.0 * A * Delta * a2 * sigma + Delta * a2 * a2 * sigma * sigma) / (D * D);
    const double R2 = D / Delta;
    const double H_over_HS2r = P / (m * D * P_r);  // H / (H Sigma^2)_r, physical units
    double bracket;
    if (detail::is_pole(th)) {
      bracket = y_theta[i] * (1.0 + H_s * D / P);
    } else {
      const double sn = std::sin(th), cs = std::cos(th);
      const double sigma_th_over = -a2 * sn * cs / D;  // Sigma_theta / Sigma
      bracket = y_theta[i] + H_s * D * cs / P * (y[i] / sn) - sigma_th_over * y[i];
    }
    x[i] = -2.0 * H_over_HS2r * R2 * bracket;
  }
  return x;
}

/// N = (phi^-1)_* d_T in coordinate components (t, r, theta, phi), using
/// sqrt(-g) = R Sigma sqrt(G^2 - F H). At x = y = 0 this is the ZAMO e0.
inline FourVector displacement_vector(const SurfaceSpec& s, double theta, double x, double y) {
  if (detail::is_pole(theta)) throw AxisError("displacement_vector: theta must lie strictly inside (0, pi)");
  const auto f = metric_at(s.params, s.r, theta);
  const double W = f.G * f.G - f.F * f.H;
  if (!(f.Delta > 0.0) || !(W > 0.0)) throw HorizonError("displacement_vector: requires r > r_+");
  const double R = std::sqrt(f.R2);
  const double Sigma = std::sqrt(f.Sigma2);
  const double alpha = std::sqrt(x * x * f.Sigma2 + f.R2 * (y * y + f.Sigma2));
  const double sqrt_minus_g = R * Sigma * std::sqrt(W);
  return {std::sqrt(f.H) * alpha / sqrt_minus_g, -x / f.R2, -y / f.Sigma2,
          -f.G * alpha / (sqrt_minus_g * std::sqrt(f.H))};
}

/// Gaussian curvature of H dphi^2 + (Sigma^2 + y^2) dtheta^2 at an interior
/// theta, from the curvature formula of a metric of this shape.
inline double deformed_curvature(const SurfaceSpec& s, double theta, double y, double y_theta) {
  if (detail::is_pole(theta)) throw AxisError("deformed_curvature: theta must lie strictly inside (0, pi)");
  const auto f = metric_at(s.params, s.r, theta);
  const auto d = metric_derivs_at(s.params, s.r, theta);
  const double l = f.Sigma2 + y * y;
  const double l_th = d.Sigma2_th + 2.0 * y * y_theta;
  const double H = f.H;
  return (H * (d.H_th * l_th - 2.0 * d.H_thth * l) + l * d.H_th * d.H_th) / (4.0 * l * l * H * H);
}

enum class PerturbationFamily { SinCos, Sin2Sin };

inline std::string_view to_string(PerturbationFamily f) {
  return f == PerturbationFamily::SinCos ? "sincos" : "sin2sin";
}

inline PerturbationFamily parse_family(std::string_view name) {
  if (name == "sincos" || name == "1") return PerturbationFamily::SinCos;
  if (name == "sin2sin" || name == "2") return PerturbationFamily::Sin2Sin;
  throw std::invalid_argument("unknown perturbation family: " + std::string(name));
}

/// y_eps and its analytic derivative: eps sin cos, or eps sin(2 theta) sin.
inline void perturbation(PerturbationFamily fam, double eps, double theta, double& y, double& y_theta) {
  const double sn = std::sin(theta), cs = std::cos(theta);
  if (fam == PerturbationFamily::SinCos) {
    y = eps * sn * cs;
    y_theta = eps * (cs * cs - sn * sn);
  } else {
    y = eps * 2.0 * sn * sn * cs;
    y_theta = eps * (4.0 * sn * cs * cs - 2.0 * sn * sn * sn);
  }
}

/// E(y) := E(x(y), y) with x from the first Euler-Lagrange equation and
/// x_theta from differentiate_samples.
inline QleResult energy_of_y(const SurfaceSpec& s, std::vector<double> theta, std::vector<double> y,
                             std::vector<double> y_theta, QuadratureRule rule = QuadratureRule::Trapezoid) {
  GaugeFunctions g;
  g.x = x_from_y(s, theta, y, y_theta);
  g.x_theta = differentiate_samples(theta, g.x);
  g.theta = std::move(theta);
  g.y = std::move(y);
  g.y_theta = std::move(y_theta);
  return qle(s, g, rule);
}

struct MinimalityRow {
  double eps;
  double delta_E;         // E(y_eps) - E(0); NaN when inadmissible
  double error_estimate;  // sum of the two quadrature estimates
  bool admissible;
};

/// True when H dphi^2 + (Sigma^2 + y^2) dtheta^2 has K > 0 at every interior
/// node of `theta`.
inline bool deformed_metric_positive(const SurfaceSpec& s, std::span<const double> theta, std::span<const double> y,
                                     std::span<const double> y_theta) {
  for (std::size_t i = 1; i + 1 < theta.size(); ++i) {
    if (!(deformed_curvature(s, theta[i], y[i], y_theta[i]) > 0.0)) return false;
  }
  return true;
}

/// E(y_eps) - E(0) for each eps. Inadmissible perturbations are reported with
/// admissible = false and skipped.
inline std::vector<MinimalityRow> minimality_probe(const SurfaceSpec& s, PerturbationFamily fam,
                                                   std::span<const double> eps_grid,
                                                   QuadratureRule rule = QuadratureRule::Trapezoid,
                                                   double dtheta = kDefaultDtheta) {
  const std::size_t n = interval_count(std::numbers::pi, dtheta);
  const auto base = qle(s, zero_gauge(n), rule);
  const auto grid = uniform_theta_grid(n);
  std::vector<MinimalityRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    if (eps == 0.0) {
      rows.push_back({0.0, 0.0, 2.0 * base.error_estimate, true});
      continue;
    }
    std::vector<double> y(grid.size()), y_th(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) perturbation(fam, eps, grid[i], y[i], y_th[i]);
    y.front() = 0.0;
    y.back() = 0.0;
    // Perturbations are given in unit-mass variables; y carries length.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      y[i] *= s.params.m();
      y_th[i] *= s.params.m();
    }
    if (!deformed_metric_positive(s, grid, y, y_th)) {
      rows.push_back({eps, std::numeric_limits<double>::quiet_NaN(), 0.0, false});
      continue;
    }
    const auto e = energy_of_y(s, grid, std::move(y), std::move(y_th), rule);
    rows.push_back({eps, e.value - base.value, e.error_estimate + base.error_estimate, true});
  }
  return rows;
}

}  // namespace kerrqle
