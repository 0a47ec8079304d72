#pragma once

#include <stdexcept>
#include <string>

namespace kerrqle {

/// Base class for every precondition failure raised by the library.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The evaluation point sits on the symmetry axis (H = 0, sin(theta) = 0).
class AxisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The evaluation point is on or inside the outer horizon.
class HorizonError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The constant-radius surface has no isometric embedding into flat 3-space.
class NotEmbeddableError : public DomainError {
 public:
  NotEmbeddableError(const std::string& what, double r_k)
      : DomainError(what), r_k_(r_k) {}
  double r_k() const noexcept { return r_k_; }

 private:
  double r_k_;
};

/// L <= 0 at an interior point even though the pole curvature is positive.
class NonPositiveLError : public DomainError {
 public:
  NonPositiveLError(const std::string& what, double theta)
      : DomainError(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// A gauge pair (x, y) for which beta^2 = 4Hl - H_theta^2 is negative.
class InadmissibleGaugeError : public DomainError {
 public:
  InadmissibleGaugeError(const std::string& what, double theta)
      : DomainError(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

}  // namespace kerrqle
