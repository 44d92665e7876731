#pragma once

#include <complex>

namespace fracjc::mlf {

using cplx = std::complex<double>;

enum class Method { Series, Contour, Oracle };

struct MlResult {
  cplx value;
  double est_error;  // relative
  Method method;
};

// Series guard radius: double precision loses ~|z|*log10(e) digits to
// cancellation for oscillatory arguments; 10 keeps the loss under 5 digits.
inline constexpr double kSeriesGuardRadius = 10.0;
inline constexpr int kSeriesTermCap = 400;
inline constexpr double kDefaultTol = 1e-12;

/// Taylor series with compensated summation. Valid for |z| inside the guard
/// radius; throws NonConvergence when the term cap is hit first.
MlResult ml_series(double alpha, cplx z, double tol = kDefaultTol);

/// Trapezoidal quadrature of the inverse-Laplace representation
///   E_a(z) = (1/2pi i) \oint e^s s^{a-1}/(s^a - z) ds
/// over a parabolic contour, plus the residue (1/a) exp(z^{1/a}) for any
/// pole lying to the right of the contour. See mlf.cpp for the error model.
MlResult ml_contour(double alpha, cplx z, double tol = kDefaultTol);

/// Dispatcher: exp shortcut at alpha == 1, series inside the guard radius,
/// contour outside.
MlResult mittag_leffler(double alpha, cplx z, double tol = kDefaultTol);

}  // namespace fracjc::mlf
