#pragma once

#include <stdexcept>
#include <string>

namespace fracjc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Series or quadrature failed to reach the requested tolerance.
struct NonConvergence : Error { using Error::Error; };

/// A pole of the contour integrand sits too close to the quadrature nodes.
struct PoleTooClose : Error { using Error::Error; };

/// |D| vanished: exceptional point of the Dyson map.
struct SingularD : Error { using Error::Error; };

/// Lambda(t) <= 0: the metric stopped being positive definite.
struct MetricCollapse : Error { using Error::Error; };

/// |varpi+|^2 + |varpi-|^2 deviates from 1 beyond tolerance.
struct UnitarityResidual : Error { using Error::Error; };

/// Coherent-state tail mass exceeds tail_tol at the given n_max.
struct TruncationTooSmall : Error { using Error::Error; };

/// Density matrix eigenvalue below the admissible negative tolerance.
struct IndefiniteDensity : Error { using Error::Error; };

struct ValidationError : Error { using Error::Error; };

/// Wraps a module error with the (alpha, n, t) location during a sweep.
struct RunError : Error {
  std::string kind;
  double alpha;
  int n;
  double t;
  RunError(std::string kind_, double alpha_, int n_, double t_,
           const std::string& msg)
      : Error(msg), kind(std::move(kind_)), alpha(alpha_), n(n_), t(t_) {}
};

inline const char* error_kind(const Error& e) {
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const PoleTooClose*>(&e)) return "PoleTooClose";
  if (dynamic_cast<const SingularD*>(&e)) return "SingularD";
  if (dynamic_cast<const MetricCollapse*>(&e)) return "MetricCollapse";
  if (dynamic_cast<const UnitarityResidual*>(&e)) return "UnitarityResidual";
  if (dynamic_cast<const TruncationTooSmall*>(&e)) return "TruncationTooSmall";
  if (dynamic_cast<const IndefiniteDensity*>(&e)) return "IndefiniteDensity";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  return "Error";
}

}  // namespace fracjc
