#include "fracjc/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracjc/errors.hpp"

namespace fracjc::mlf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_common(double alpha, double tol) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ValidationError("mlf: alpha must be in (0,1], got " +
                          std::to_string(alpha));
  if (!(tol >= 1e-15 && tol <= 1e-2))
    throw ValidationError("mlf: tol must be in [1e-15,1e-2], got " +
                          std::to_string(tol));
}

struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  void add(cplx x) {
    cplx y = x - comp;
    cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Parabolic contour s(u) = sigma + mu_c (1 + iu)^2, trapezoid step h,
// nodes u_j = j h for j = -m..m.
struct Contour {
  double sigma;
  double mu_c;
  double h;
  int m;

  cplx point(int j) const {
    cplx w(1.0, j * h);
    return sigma + mu_c * w * w;
  }
  cplx deriv(int j) const {  // ds/du at node j
    cplx w(1.0, j * h);
    return 2.0 * mu_c * cplx(0.0, 1.0) * w;
  }
  // Re of the contour at a given ordinate (the parabola opens leftward).
  double re_at(double im) const {
    double u = im / (2.0 * mu_c);
    return sigma + mu_c * (1.0 - u * u);
  }
};

// Error model, target e^{-L}, with a = 2 pi / h:
//   truncation of the arms        exp(mu_c (1 - umax^2))
//   upper-edge discretization     exp(-a)        (strip ends at the u = i
//                                                 branch point, width 1)
//   lower-edge discretization     exp(a - a^2 / (4 mu_c))  (optimal strip
//                                                 width a/(2 mu_c) - 1)
// With the free choice mu_c = L/8 all three equalize at a = L, umax = 3
// (the classical parabolic-contour tuning). When a pole forces a different
// mu_c, a and umax are rebalanced so no edge term exceeds e^{-L}.
Contour make_contour(double L, double mu_c, double sigma) {
  Contour c;
  c.mu_c = mu_c;
  const double a =
      std::max(L, 2.0 * mu_c * (1.0 + std::sqrt(1.0 + L / mu_c)));
  c.h = 2.0 * kPi / a;
  double umax = std::sqrt(1.0 + a / mu_c);
  c.m = static_cast<int>(std::ceil(umax / c.h)) + 2;
  c.sigma = sigma;
  return c;
}

cplx integrand(double alpha, cplx z, cplx s) {
  if (alpha == 1.0) return std::exp(s) / (s - z);
  // principal branch s^alpha; s stays off the cut for sigma = 0
  cplx ls = std::log(s);
  return std::exp(s + (alpha - 1.0) * ls) / (std::exp(alpha * ls) - z);
}

cplx quadrature(double alpha, cplx z, const Contour& c) {
  KahanSum acc;
  for (int j = -c.m; j <= c.m; ++j)
    acc.add(integrand(alpha, z, c.point(j)) * c.deriv(j));
  return acc.sum * c.h / (2.0 * kPi * cplx(0.0, 1.0));
}

struct PoleInfo {
  bool exists = false;  // on the principal sheet
  cplx location{};
};

PoleInfo locate_pole(double alpha, cplx z) {
  PoleInfo p;
  if (alpha == 1.0) {
    // no branch cut: 1/(s - z) has a genuine pole for every z
    p.exists = true;
    p.location = z;
    return p;
  }
  double th = std::arg(z);
  if (std::abs(th) < alpha * kPi) {
    p.exists = true;
    p.location = std::exp(std::log(z) / alpha);
  }
  return p;
}

// The pole's u-plane image sits at Im u = 1 -+ w_r with
// w_r = Re sqrt((p - sigma)/mu_c), so w_r near 1 puts it on the contour and
// w_r in (0.5, 2) pinches one of the analyticity strips. In that band mu_c
// is re-chosen to pin w_r = 2: the pole moves to the right of the contour
// (its residue is added) a full strip-width away from the nodes.
double choose_mu(double L, const PoleInfo& pole, double sigma) {
  double mu = L / 8.0;
  if (!pole.exists) return mu;
  const cplx p = pole.location - sigma;
  const double g = std::max(0.0, std::cos(0.5 * std::arg(p)));
  const double w_r = g * std::sqrt(std::abs(p) / mu);
  if (w_r > 0.5 && w_r < 2.0)
    mu = std::max(g * g * std::abs(p) / 4.0, 0.5);
  return mu;
}

double pole_distance(const Contour& c, cplx p) {
  double mind = std::numeric_limits<double>::infinity();
  for (int j = -c.m; j <= c.m; ++j)
    mind = std::min(mind, std::abs(c.point(j) - p));
  return mind;
}

// Quadrature plus the residue of any pole to the right of the contour.
cplx evaluate(double alpha, cplx z, const Contour& c, const PoleInfo& pole) {
  cplx total = quadrature(alpha, z, c);
  if (pole.exists && pole.location.real() > c.re_at(pole.location.imag()))
    total += std::exp(pole.location) / alpha;
  return total;
}

}  // namespace

MlResult ml_series(double alpha, cplx z, double tol) {
  check_common(alpha, tol);
  if (std::abs(z) > kSeriesGuardRadius)
    throw ValidationError("ml_series: |z| exceeds the series guard radius");
  KahanSum acc;
  acc.add(cplx(1.0, 0.0));  // k = 0 term
  if (z == cplx(0.0, 0.0)) return {acc.sum, 0.0, Method::Series};

  cplx term(1.0, 0.0);
  double lg_prev = 0.0;  // lgamma(1)
  double max_term = 1.0;
  int below = 0;
  for (int k = 1; k <= kSeriesTermCap; ++k) {
    double lg = std::lgamma(alpha * k + 1.0);
    term *= z * std::exp(lg_prev - lg);
    lg_prev = lg;
    acc.add(term);
    max_term = std::max(max_term, std::abs(term));
    double mag = std::abs(acc.sum);
    double rel = std::abs(term) / mag;
    if (rel < tol) {
      if (++below == 2) {
        // rounding of the largest term bounds the cancellation error
        double cancel = 4.0 * kEps * max_term / mag;
        double est = std::max(rel, cancel);
        if (est > tol)
          throw NonConvergence(
              "ml_series: cancellation loss " + std::to_string(est) +
              " exceeds tol; switch to the contour path");
        return {acc.sum, est, Method::Series};
      }
    } else {
      below = 0;
    }
  }
  throw NonConvergence("ml_series: term cap " +
                       std::to_string(kSeriesTermCap) +
                       " reached before the stopping rule fired");
}

MlResult ml_contour(double alpha, cplx z, double tol) {
  check_common(alpha, tol);
  if (z == cplx(0.0, 0.0))
    throw ValidationError("ml_contour: z must be nonzero");

  const PoleInfo pole = locate_pole(alpha, z);
  if (pole.exists && pole.location.real() > 700.0)
    throw NonConvergence("ml_contour: exp(z^{1/alpha}) exceeds double range");

  // For alpha == 1 the integrand has no branch cut, so the contour may be
  // shifted left of the pole; the residue then carries the whole value and
  // the remaining integral is exponentially small.
  const double L0 = std::max(-std::log(tol) + 4.0, 14.0);
  const double sigma =
      (alpha == 1.0) ? std::min(0.0, z.real() - L0 - 5.0) : 0.0;

  for (int escalation = 0; escalation <= 3; ++escalation) {
    double L = L0 * std::pow(1.6, escalation);
    double mu = choose_mu(L, pole, sigma);
    Contour coarse = make_contour(L, mu, sigma);
    Contour fine = make_contour(1.35 * L, mu, sigma);
    cplx v1 = evaluate(alpha, z, coarse, pole);
    cplx v2 = evaluate(alpha, z, fine, pole);
    double denom = std::max(std::abs(v2), 1e-300);
    double est = std::abs(v1 - v2) / denom;
    if (est <= tol) return {v2, est, Method::Contour};
  }
  if (pole.exists) {
    Contour probe = make_contour(L0, choose_mu(L0, pole, sigma), sigma);
    if (pole_distance(probe, pole.location) < 2.0 * probe.mu_c)
      throw PoleTooClose("ml_contour: pole at (" +
                         std::to_string(pole.location.real()) + "," +
                         std::to_string(pole.location.imag()) +
                         ") defeats the quadrature");
  }
  throw NonConvergence("ml_contour: quadrature error estimate above tol");
}

MlResult mittag_leffler(double alpha, cplx z, double tol) {
  check_common(alpha, tol);
  if (alpha == 1.0) return {std::exp(z), 4.0 * kEps, Method::Series};
  if (std::abs(z) <= kSeriesGuardRadius) {
    try {
      return ml_series(alpha, z, tol);
    } catch (const NonConvergence&) {
      if (z == cplx(0.0, 0.0)) throw;
      return ml_contour(alpha, z, tol);
    }
  }
  return ml_contour(alpha, z, tol);
}

}  // namespace fracjc::mlf
