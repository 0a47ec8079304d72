#pragma once

// Geometry of the constant-(t, r) surface S with induced metric
// H dphi^2 + Sigma^2 dtheta^2, written in sigma = sin^2(theta).
//
// Unit-mass closed forms (A = a^2 + r^2, D = Sigma^2 = A - a^2 sigma,
// P = A^2 - Delta a^2 sigma so that H Sigma^2 = sigma P):
//
//   K  = f(sigma) / P^2
//   f  = H_s (A^2 - Delta a^2) - 2 H_ss P (1 - sigma)
//   k  = (2rA - (r-1) a^2 sigma) sqrt(Delta) / (P sqrt(D))
//   L  = 1 - H_theta^2 / (4 H Sigma^2) = 1 - H_s^2 (1 - sigma) / P
//   k0 = sqrt(H/L) K + sqrt(L/H)
//
// L and L/H vanish / stay finite at the poles; both are evaluated through the
// polynomial N(sigma) = P D^4 - Q^2 (1 - sigma), Q = H_s D^2, whose constant
// term cancels exactly, so N/sigma is formed coefficient-wise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "kerrqle/kerr_metric.hpp"
#include "kerrqle/quadrature.hpp"
#include "kerrqle/regions.hpp"

namespace kerrqle {

struct SurfaceSpec {
  KerrParams params;
  double r;

  SurfaceSpec(const KerrParams& p, double radius) : params(p), r(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw DomainError("SurfaceSpec: radius must be positive and finite");
    }
  }

  double a_unit() const noexcept { return params.a_over_m(); }
  double r_unit() const noexcept { return r / params.m(); }
};

struct ProofFunctions {
  double f;
  double U;
  double g;
  double h;
  double V;
};

struct EmbeddingProfile {
  std::vector<double> theta;
  std::vector<double> rho;        // sqrt(H)
  std::vector<double> z;          // cumulative trapezoid of z_theta
  std::vector<double> rho_theta;  // analytic d(rho)/d(theta)
  std::vector<double> z_theta;    // Sigma sqrt(L)
  std::vector<double> L;
};

namespace detail {

template <std::size_t N>
using Poly = std::array<double, N>;

template <std::size_t N, std::size_t M>
Poly<N + M - 1> poly_mul(const Poly<N>& p, const Poly<M>& q) {
  Poly<N + M - 1> out{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < M; ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

template <std::size_t N>
double poly_eval(const Poly<N>& p, double x) {
  double s = 0.0;
  for (std::size_t i = N; i-- > 0;) s = s * x + p[i];
  return s;
}

// Closed forms for unit mass at fixed (a, r).
class UnitSurface {
 public:
  UnitSurface(double a, double r) : a_(a), r_(r) {
    a2_ = a * a;
    A_ = a2_ + r * r;
    Delta_ = r * r - 2.0 * r + a2_;

    const Poly<2> D{A_, -a2_};
    const Poly<2> P{A_ * A_, -Delta_ * a2_};
    const Poly<3> Q{A_ * A_ * A_, -2.0 * A_ * Delta_ * a2_, Delta_ * a2_ * a2_};
    const auto D2 = poly_mul(D, D);
    const auto PD4 = poly_mul(P, poly_mul(D2, D2));
    const auto QQ1 = poly_mul(poly_mul(Q, Q), Poly<2>{1.0, -1.0});
    for (std::size_t i = 0; i < ntilde_.size(); ++i) ntilde_[i] = PD4[i + 1] - QQ1[i + 1];
  }

  double D(double s) const { return A_ - a2_ * s; }
  double P(double s) const { return A_ * A_ - Delta_ * a2_ * s; }
  double H(double s) const { return s * P(s) / D(s); }
  double H_s(double s) const {
    const double d = D(s);
    return (A_ * A_ * A_ - 2.0 * A_ * Delta_ * a2_ * s + Delta_ * a2_ * a2_ * s * s) / (d * d);
  }
  double H_ss(double s) const {
    const double d = D(s);
    return 4.0 * r_ * A_ * A_ * a2_ / (d * d * d);
  }

  double f(double s) const {
    return H_s(s) * (A_ * A_ - Delta_ * a2_) - 2.0 * H_ss(s) * P(s) * (1.0 - s);
  }
  double K(double s) const {
    const double p = P(s);
    return f(s) / (p * p);
  }
  double k(double s) const {
    return (2.0 * r_ * A_ - (r_ - 1.0) * a2_ * s) * std::sqrt(Delta_) / (P(s) * std::sqrt(D(s)));
  }
  // L / H; finite at the poles where it tends to K(0).
  double lambda(double s) const {
    const double d = D(s), p = P(s);
    return poly_eval(ntilde_, s) / (d * d * d * p * p);
  }
  double L(double s) const {
    const double d = D(s), d2 = d * d;
    return s * poly_eval(ntilde_, s) / (d2 * d2 * P(s));
  }
  double k0(double s) const {
    const double lam = lambda(s);
    const double root = std::sqrt(lam);
    return K(s) / root + root;
  }
  double pole_K() const { return r_ * (r_ * r_ * r_ + a2_ * r_ - 6.0 * a2_) / (A_ * A_ * A_); }

  ProofFunctions proof(double s) const {
    ProofFunctions pf{};
    pf.f = f(s);
    const double d = D(s);
    pf.U = d * (3.0 * A_ * A_ + Delta_ * a2_ - 4.0 * Delta_ * a2_ * s) -
           6.0 * a2_ * P(s) * (1.0 - s);
    const double num = 2.0 * r_ * A_ - (r_ - 1.0) * a2_ * s;
    pf.g = num * num * Delta_ / d;
    pf.h = 4.0 * pf.f - pf.g;
    pf.V = pf.U - Delta_ * r_ * r_ * r_ * r_;
    return pf;
  }

  double Delta() const { return Delta_; }

 private:
  double a_, r_, a2_, A_, Delta_;
  Poly<5> ntilde_{};
};

inline void check_theta_range(double theta, const char* who) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    std::ostringstream os;
    os << who << ": theta must lie in [0, pi]";
    throw DomainError(os.str());
  }
}

inline UnitSurface unit(const SurfaceSpec& s) { return UnitSurface(s.a_unit(), s.r_unit()); }

inline void require_outside_horizon(const SurfaceSpec& s, const char* who) {
  if (!(s.r > r_plus(s.params))) {
    std::ostringstream os;
    os << who << ": r=" << s.r << " is not outside the outer horizon r_+=" << r_plus(s.params);
    throw HorizonError(os.str());
  }
}

inline void require_embeddable(const SurfaceSpec& s, const char* who) {
  if (!(unit(s).pole_K() > 0.0)) {
    const double rk = r_k(s.params);
    std::ostringstream os;
    os.precision(6);
    os << who << ": not embeddable: r <= r_k(a)=" << rk;
    throw NotEmbeddableError(os.str(), rk);
  }
}

}  // namespace detail

/// Gaussian curvature K at theta in [0, pi] from the reduced rational form.
/// The form is regular at the poles, where it equals pole_curvature.
inline double gaussian_curvature(const SurfaceSpec& s, double theta) {
  detail::check_theta_range(theta, "gaussian_curvature");
  const double m = s.params.m();
  return detail::unit(s).K(detail::sin2(theta)) / (m * m);
}

/// K(0) = r (r^3 + a^2 r - 6 a^2 m) / (a^2 + r^2)^3.
inline double pole_curvature(const SurfaceSpec& s) {
  const double m = s.params.m();
  return detail::unit(s).pole_K() / (m * m);
}

/// L = 1 - H_theta^2 / (4 H Sigma^2). Zero at the poles.
inline double L_value(const SurfaceSpec& s, double theta) {
  detail::check_theta_range(theta, "L_value");
  return detail::unit(s).L(detail::sin2(theta));
}

/// L / H, continued to the poles by its limit K(0).
inline double L_over_H(const SurfaceSpec& s, double theta) {
  detail::check_theta_range(theta, "L_over_H");
  const double m = s.params.m();
  return detail::unit(s).lambda(detail::sin2(theta)) / (m * m);
}

/// Mean curvature of S inside the t = const slice. Requires r > r_+.
inline double mean_curvature_k(const SurfaceSpec& s, double theta) {
  detail::check_theta_range(theta, "mean_curvature_k");
  detail::require_outside_horizon(s, "mean_curvature_k");
  return detail::unit(s).k(detail::sin2(theta)) / s.params.m();
}

/// Mean curvature of the isometric image of S in Euclidean 3-space.
inline double embedded_mean_curvature_k0(const SurfaceSpec& s, double theta) {
  detail::check_theta_range(theta, "embedded_mean_curvature_k0");
  detail::require_embeddable(s, "embedded_mean_curvature_k0");
  const auto u = detail::unit(s);
  const double sigma = detail::sin2(theta);
  if (!(u.lambda(sigma) > 0.0)) {
    std::ostringstream os;
    os << "embedded_mean_curvature_k0: L <= 0 at (a=" << s.params.a() << ", r=" << s.r
       << ", theta=" << theta << ")";
    throw NonPositiveLError(os.str(), theta);
  }
  return u.k0(sigma) / s.params.m();
}

inline double mean_curvature_difference(const SurfaceSpec& s, double theta) {
  return embedded_mean_curvature_k0(s, theta) - mean_curvature_k(s, theta);
}

/// f, U, g, h, V at sigma in [0, 1], in unit-mass variables (a/m, r/m).
inline ProofFunctions proof_functions(const SurfaceSpec& s, double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("proof_functions: sigma must lie in [0, 1]");
  return detail::unit(s).proof(sigma);
}

/// n + 1 equally spaced nodes on [0, pi], endpoints exact.
inline std::vector<double> uniform_theta_grid(std::size_t intervals) {
  if (intervals == 0) throw DomainError("uniform_theta_grid: need at least one interval");
  std::vector<double> g(intervals + 1);
  const double h = std::numbers::pi / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) g[i] = h * static_cast<double>(i);
  g.back() = std::numbers::pi;
  return g;
}

/// Axisymmetric profile (rho, z) whose surface of revolution is isometric to
/// S: rho = sqrt(H), z_theta = Sigma sqrt(L). z is measured from the first
/// grid node by cumulative trapezoid.
inline EmbeddingProfile embedding_profile(const SurfaceSpec& s, std::span<const double> grid) {
  detail::require_embeddable(s, "embedding_profile");
  if (grid.size() < 2) throw DomainError("embedding_profile: grid needs at least two nodes");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    detail::check_theta_range(grid[i], "embedding_profile");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("embedding_profile: grid must increase");
  }
  const auto u = detail::unit(s);
  const double m = s.params.m();
  EmbeddingProfile prof;
  const std::size_t n = grid.size();
  prof.theta.assign(grid.begin(), grid.end());
  prof.rho.resize(n);
  prof.rho_theta.resize(n);
  prof.z_theta.resize(n);
  prof.L.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = grid[i];
    const double sigma = detail::sin2(th);
    const double L = u.L(sigma);
    const bool pole = sigma == 0.0;
    if (!pole && !(L > 0.0)) {
      std::ostringstream os;
      os << "embedding_profile: L <= 0 at (a=" << s.params.a() << ", r=" << s.r << ", theta=" << th << ")";
      throw NonPositiveLError(os.str(), th);
    }
    const double D = u.D(sigma);
    prof.L[i] = L;
    prof.rho[i] = m * std::sqrt(u.H(sigma));
    // d sqrt(H)/d theta = H_sigma cos(theta) sqrt(D / P), regular on the axis.
    const double c = th == std::numbers::pi ? -1.0 : std::cos(th);
    prof.rho_theta[i] = m * u.H_s(sigma) * c * std::sqrt(D / u.P(sigma));
    prof.z_theta[i] = m * std::sqrt(D) * std::sqrt(std::max(L, 0.0));
  }
  prof.z = cumulative_trapezoid(prof.theta, prof.z_theta);
  return prof;
}

/// Minima of K and of k0 - k over a uniform grid of `intervals` steps on
/// [0, pi] (poles included). min_k0_minus_k is only filled when the surface is
/// embeddable.
struct SignScan {
  double min_K;
  bool embeddable;
  double min_k0_minus_k;
};

inline SignScan scan_signs(const SurfaceSpec& s, std::size_t intervals) {
  const auto u = detail::unit(s);
  const double m = s.params.m();
  SignScan out{std::numeric_limits<double>::infinity(), false, std::numeric_limits<double>::infinity()};
  const auto grid = uniform_theta_grid(intervals);
  for (double th : grid) out.min_K = std::min(out.min_K, u.K(detail::sin2(th)) / (m * m));
  out.embeddable = out.min_K > 0.0 && s.r > r_plus(s.params);
  if (out.embeddable) {
    for (double th : grid) {
      const double sigma = detail::sin2(th);
      out.min_k0_minus_k = std::min(out.min_k0_minus_k, (u.k0(sigma) - u.k(sigma)) / m);
    }
  }
  return out;
}

}  // namespace kerrqle
