#pragma once

// Composite rules on uniformly spaced samples.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kerrqle {

enum class QuadratureRule { Trapezoid, Simpson };

inline std::string_view to_string(QuadratureRule rule) {
  return rule == QuadratureRule::Trapezoid ? "trapezoid" : "simpson";
}

inline QuadratureRule parse_rule(std::string_view name) {
  if (name == "trapezoid") return QuadratureRule::Trapezoid;
  if (name == "simpson") return QuadratureRule::Simpson;
  throw std::invalid_argument("unknown quadrature rule: " + std::string(name));
}

/// Integral of uniformly spaced samples and a grid-halving error estimate.
struct QuadratureValue {
  double value;
  double error_estimate;
};

namespace detail {

inline double trapezoid_strided(std::span<const double> f, double h, std::size_t stride) {
  const std::size_t n = (f.size() - 1) / stride;
  double s = 0.5 * (f.front() + f[n * stride]);
  for (std::size_t i = 1; i < n; ++i) s += f[i * stride];
  return s * h * static_cast<double>(stride);
}

inline double simpson_strided(std::span<const double> f, double h, std::size_t stride) {
  const std::size_t n = (f.size() - 1) / stride;
  double s = f.front() + f[n * stride];
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i * stride];
  return s * h * static_cast<double>(stride) / 3.0;
}

}  // namespace detail

/// Number of intervals to use on [0, span] for a requested spacing. The count
/// is rounded up to a multiple of 4 so that both rules can be halved.
inline std::size_t interval_count(double span, double requested_step) {
  if (!(requested_step > 0.0) || !(span > 0.0)) {
    throw std::invalid_argument("interval_count: span and step must be positive");
  }
  const auto n = static_cast<std::size_t>(std::ceil(span / requested_step / 4.0 - 1e-9));
  return 4 * (n == 0 ? 1 : n);
}

/// Integrate samples f_0 .. f_n with spacing h. n must be divisible by 4.
/// The error estimate is the Richardson difference against the half-resolution
/// sum over every other sample.
inline QuadratureValue integrate_uniform(std::span<const double> f, double h, QuadratureRule rule) {
  const std::size_t n = f.size() - 1;
  if (f.size() < 5 || n % 4 != 0) {
    throw std::invalid_argument("integrate_uniform: interval count must be a positive multiple of 4");
  }
  if (rule == QuadratureRule::Trapezoid) {
    const double fine = detail::trapezoid_strided(f, h, 1);
    const double coarse = detail::trapezoid_strided(f, h, 2);
    return {fine, std::abs(fine - coarse) / 3.0};
  }
  const double fine = detail::simpson_strided(f, h, 1);
  const double coarse = detail::simpson_strided(f, h, 2);
  return {fine, std::abs(fine - coarse) / 15.0};
}

/// Running trapezoid integral; out[0] = 0 and out[i] = integral up to x_i.
/// Accepts nonuniform grids.
inline std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> f) {
  if (x.size() != f.size() || x.empty()) {
    throw std::invalid_argument("cumulative_trapezoid: size mismatch");
  }
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  }
  return out;
}

}  // namespace kerrqle
