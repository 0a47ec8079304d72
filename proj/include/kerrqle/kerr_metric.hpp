#pragma once

// Kerr metric in Boyer-Lindquist coordinates (t, r, theta, phi):
//
//   g = F dt^2 + 2G dt dphi + H dphi^2 + R^2 dr^2 + Sigma^2 dtheta^2
//
// Every closed form below is written for unit mass. Public entry points take a
// general mass and rescale through ds^2 = m^2 d(s~)^2 with r = m r~, a = m a~.

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kerrqle/errors.hpp"

namespace kerrqle {

/// Black-hole parameters in geometric units. Construction enforces m > 0 and
/// 0 <= a <= m.
class KerrParams {
 public:
  KerrParams(double m, double a) : m_(m), a_(a) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw DomainError("KerrParams: mass must be positive and finite");
    }
    if (!(a >= 0.0) || a > m) {
      std::ostringstream os;
      os << "KerrParams: spin must satisfy 0 <= a <= m (a=" << a << ", m=" << m << ")";
      throw DomainError(os.str());
    }
  }

  double m() const noexcept { return m_; }
  double a() const noexcept { return a_; }
  /// Spin in units of the mass, a/m in [0, 1].
  double a_over_m() const noexcept { return a_ / m_; }

 private:
  double m_;
  double a_;
};

struct MetricFields {
  double F;
  double G;
  double H;
  double R2;
  double Sigma2;
  double Delta;
  double sigma;  // sin^2(theta)
};

/// Partials with respect to r and theta. H_sigma and H_sigmasigma are the
/// derivatives of H as a function of sigma = sin^2(theta) at fixed r.
struct MetricDerivs {
  double F_r, F_th;
  double G_r, G_th;
  double H_r, H_th, H_thth;
  double R2_r, R2_th;
  double Sigma2_r, Sigma2_th;
  double H_sigma;
  double H_sigmasigma;
};

/// Index order is t = 0, r = 1, theta = 2, phi = 3.
using Christoffels = std::array<std::array<std::array<double, 4>, 4>, 4>;
using FourVector = std::array<double, 4>;
using MetricMatrix = std::array<std::array<double, 4>, 4>;

/// Zero-angular-momentum observer frame with e0 = beta (d_t + omega d_phi),
/// e1 = d_r / R, e2 = d_theta / Sigma, e3 = d_phi / sqrt(H).
struct ZamoFrame {
  double beta;
  double omega;
  std::array<FourVector, 4> e;
};

namespace detail {

inline void check_point(const KerrParams&, double r, double theta) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("radius must be positive");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta must lie in [0, pi]");
  }
}

// sin^2 and cos^2 with exact zeros at the poles.
inline double sin2(double theta) {
  if (theta == 0.0 || theta == std::numbers::pi) return 0.0;
  const double s = std::sin(theta);
  return s * s;
}

// H(sigma) and its sigma-derivatives for unit mass.
struct HSigmaForms {
  double A;       // a^2 + r^2
  double Delta;   // r^2 - 2r + a^2
  double D;       // Sigma^2 = A - a^2 sigma
  double P;       // H Sigma^2 / sigma = A^2 - Delta a^2 sigma
  double H;
  double H_sigma;
  double H_sigmasigma;
  double H_sigmasigmasigma;
};

inline HSigmaForms h_sigma_forms(double a, double r, double sigma) {
  HSigmaForms h{};
  const double a2 = a * a;
  h.A = a2 + r * r;
  h.Delta = r * r - 2.0 * r + a2;
  h.D = h.A - a2 * sigma;
  h.P = h.A * h.A - h.Delta * a2 * sigma;
  h.H = sigma * h.P / h.D;
  const double D2 = h.D * h.D;
  h.H_sigma = (h.A * h.A * h.A - 2.0 * h.A * h.Delta * a2 * sigma +
               h.Delta * a2 * a2 * sigma * sigma) /
              D2;
  h.H_sigmasigma = 4.0 * r * h.A * h.A * a2 / (D2 * h.D);
  h.H_sigmasigmasigma = 12.0 * r * h.A * h.A * a2 * a2 / (D2 * D2);
  return h;
}

inline MetricFields unit_metric(double a, double r, double theta) {
  const double sigma = sin2(theta);
  const auto h = h_sigma_forms(a, r, sigma);
  MetricFields mf{};
  mf.sigma = sigma;
  mf.Sigma2 = h.D;
  mf.Delta = h.Delta;
  mf.F = -(h.Delta - a * a * sigma) / h.D;
  mf.G = -2.0 * a * r * sigma / h.D;
  mf.H = h.H;
  mf.R2 = h.D / h.Delta;
  return mf;
}

inline MetricDerivs unit_metric_derivs(double a, double r, double theta) {
  const double sigma = sin2(theta);
  const double sc = (theta == 0.0 || theta == std::numbers::pi)
                        ? 0.0
                        : std::sin(theta) * std::cos(theta);
  const auto h = h_sigma_forms(a, r, sigma);
  const double a2 = a * a;
  const double S2 = h.D;
  const double S4 = S2 * S2;
  const double Delta_r = 2.0 * r - 2.0;
  const double sigma_th = 2.0 * sc;

  MetricDerivs d{};
  d.Sigma2_r = 2.0 * r;
  d.Sigma2_th = -a2 * sigma_th;

  // F = -1 + 2r / Sigma^2
  d.F_r = 2.0 / S2 - 2.0 * r * d.Sigma2_r / S4;
  d.F_th = -2.0 * r * d.Sigma2_th / S4;

  // G = -2 a r sigma / Sigma^2
  d.G_r = -2.0 * a * sigma / S2 + 2.0 * a * r * sigma * d.Sigma2_r / S4;
  d.G_th = -2.0 * a * r * sigma_th / S2 + 2.0 * a * r * sigma * d.Sigma2_th / S4;

  // H = sigma P / Sigma^2
  const double P_r = 4.0 * r * h.A - Delta_r * a2 * sigma;
  d.H_r = sigma * P_r / S2 - sigma * h.P * d.Sigma2_r / S4;
  d.H_sigma = h.H_sigma;
  d.H_sigmasigma = h.H_sigmasigma;
  d.H_th = 2.0 * h.H_sigma * sc;
  d.H_thth = 4.0 * h.H_sigmasigma * sigma * (1.0 - sigma) + 2.0 * h.H_sigma * (1.0 - 2.0 * sigma);

  // R^2 = Sigma^2 / Delta
  d.R2_r = (d.Sigma2_r * h.Delta - S2 * Delta_r) / (h.Delta * h.Delta);
  d.R2_th = d.Sigma2_th / h.Delta;
  return d;
}

inline MetricMatrix metric_matrix(const MetricFields& f) {
  MetricMatrix g{};
  g[0][0] = f.F;
  g[0][3] = g[3][0] = f.G;
  g[3][3] = f.H;
  g[1][1] = f.R2;
  g[2][2] = f.Sigma2;
  return g;
}

inline double dot(const MetricMatrix& g, const FourVector& u, const FourVector& v) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s += g[i][j] * u[i] * v[j];
  }
  return s;
}

}  // namespace detail

/// Metric components at (r, theta). On the axis H = 0 and the remaining
/// components stay finite; on the horizon R^2 is infinite.
inline MetricFields metric_at(const KerrParams& p, double r, double theta) {
  detail::check_point(p, r, theta);
  const double m = p.m();
  auto f = detail::unit_metric(p.a_over_m(), r / m, theta);
  f.G *= m;
  f.H *= m * m;
  f.Sigma2 *= m * m;
  f.Delta *= m * m;
  return f;
}

inline MetricDerivs metric_derivs_at(const KerrParams& p, double r, double theta) {
  detail::check_point(p, r, theta);
  const double m = p.m();
  auto d = detail::unit_metric_derivs(p.a_over_m(), r / m, theta);
  // A component scaling as m^k has r-partials scaling as m^(k-1) and
  // theta-partials as m^k.
  d.F_r /= m;
  d.G_th *= m;
  d.H_r *= m;
  d.H_th *= m * m;
  d.H_thth *= m * m;
  d.H_sigma *= m * m;
  d.H_sigmasigma *= m * m;
  d.R2_r /= m;
  d.Sigma2_r *= m;
  d.Sigma2_th *= m * m;
  return d;
}

/// Christoffel symbols Gamma[l][mu][nu] of the full Kerr metric, built from
/// the analytic first derivatives.
inline Christoffels christoffels_at(const KerrParams& p, double r, double theta) {
  detail::check_point(p, r, theta);
  if (theta <= 0.0 || theta >= std::numbers::pi) {
    throw AxisError("christoffels_at: theta must lie strictly inside (0, pi)");
  }
  const auto f = metric_at(p, r, theta);
  if (f.Delta == 0.0) {
    throw HorizonError("christoffels_at: Delta vanishes on a horizon");
  }
  const auto d = metric_derivs_at(p, r, theta);

  // dg[k][i][j] = d_k g_ij
  std::array<MetricMatrix, 4> dg{};
  dg[1][0][0] = d.F_r;
  dg[2][0][0] = d.F_th;
  dg[1][0][3] = dg[1][3][0] = d.G_r;
  dg[2][0][3] = dg[2][3][0] = d.G_th;
  dg[1][3][3] = d.H_r;
  dg[2][3][3] = d.H_th;
  dg[1][1][1] = d.R2_r;
  dg[2][1][1] = d.R2_th;
  dg[1][2][2] = d.Sigma2_r;
  dg[2][2][2] = d.Sigma2_th;

  MetricMatrix ginv{};
  const double det_tphi = f.F * f.H - f.G * f.G;
  ginv[0][0] = f.H / det_tphi;
  ginv[0][3] = ginv[3][0] = -f.G / det_tphi;
  ginv[3][3] = f.F / det_tphi;
  ginv[1][1] = 1.0 / f.R2;
  ginv[2][2] = 1.0 / f.Sigma2;

  Christoffels gamma{};
  for (int l = 0; l < 4; ++l) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu; nu < 4; ++nu) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) {
          if (ginv[l][k] == 0.0) continue;
          s += ginv[l][k] * (dg[mu][k][nu] + dg[nu][k][mu] - dg[k][mu][nu]);
        }
        gamma[l][mu][nu] = gamma[l][nu][mu] = 0.5 * s;
      }
    }
  }
  return gamma;
}

/// Locally nonrotating frame. Requires H > 0 (off axis) and
/// G^2 - F H > 0 (outside the outer horizon).
inline ZamoFrame zamo_frame_at(const KerrParams& p, double r, double theta) {
  const auto f = metric_at(p, r, theta);
  if (!(f.H > 0.0)) {
    throw AxisError("zamo_frame_at: H vanishes on the axis");
  }
  const double W = f.G * f.G - f.F * f.H;
  if (!(W > 0.0) || !(f.Delta > 0.0)) {
    throw HorizonError("zamo_frame_at: G^2 - F H is not positive (on or inside a horizon)");
  }
  ZamoFrame z{};
  z.omega = -f.G / f.H;
  z.beta = std::sqrt(f.H) / std::sqrt(W);
  z.e[0] = {z.beta, 0.0, 0.0, z.beta * z.omega};
  z.e[1] = {0.0, 1.0 / std::sqrt(f.R2), 0.0, 0.0};
  z.e[2] = {0.0, 0.0, 1.0 / std::sqrt(f.Sigma2), 0.0};
  z.e[3] = {0.0, 0.0, 0.0, 1.0 / std::sqrt(f.H)};
  return z;
}

/// Frame connection coefficient <nabla_{e_c} e_b, e_a> in the ZAMO frame.
/// Frame-vector derivatives are analytic; the covariant part uses
/// christoffels_at.
inline double frame_connection(const KerrParams& p, double r, double theta, int a, int b, int c) {
  const auto z = zamo_frame_at(p, r, theta);
  const auto f = metric_at(p, r, theta);
  const auto d = metric_derivs_at(p, r, theta);
  const auto gamma = christoffels_at(p, r, theta);

  // de[b][k][nu]: derivative of e_b^nu along coordinate k (only r, theta).
  std::array<std::array<FourVector, 4>, 4> de{};
  const double W = f.G * f.G - f.F * f.H;
  const std::array<double, 2> F_k{d.F_r, d.F_th}, G_k{d.G_r, d.G_th}, H_k{d.H_r, d.H_th},
      R2_k{d.R2_r, d.R2_th}, S2_k{d.Sigma2_r, d.Sigma2_th};
  for (int i = 0; i < 2; ++i) {
    const int k = i + 1;
    const double W_k = 2.0 * f.G * G_k[i] - F_k[i] * f.H - f.F * H_k[i];
    const double beta_k = 0.5 * z.beta * (H_k[i] / f.H - W_k / W);
    const double omega_k = -(G_k[i] * f.H - f.G * H_k[i]) / (f.H * f.H);
    de[0][k][0] = beta_k;
    de[0][k][3] = beta_k * z.omega + z.beta * omega_k;
    de[1][k][1] = -0.5 * R2_k[i] / (f.R2 * std::sqrt(f.R2));
    de[2][k][2] = -0.5 * S2_k[i] / (f.Sigma2 * std::sqrt(f.Sigma2));
    de[3][k][3] = -0.5 * H_k[i] / (f.H * std::sqrt(f.H));
  }

  FourVector cov{};
  for (int nu = 0; nu < 4; ++nu) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const double ec = z.e[c][mu];
      if (ec == 0.0) continue;
      double t = de[b][mu][nu];
      for (int l = 0; l < 4; ++l) t += gamma[nu][mu][l] * z.e[b][l];
      s += ec * t;
    }
    cov[nu] = s;
  }
  return detail::dot(detail::metric_matrix(f), cov, z.e[a]);
}

/// The coefficient omega^0_{12} = <nabla_{e2} e1, e0>, which vanishes for Kerr.
inline double omega012_at(const KerrParams& p, double r, double theta) {
  return frame_connection(p, r, theta, 0, 1, 2);
}

}  // namespace kerrqle
