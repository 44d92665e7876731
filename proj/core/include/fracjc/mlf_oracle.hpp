#pragma once

#include <complex>
#include <string>

namespace fracjc::mlf {

/// Direct Taylor summation of E_alpha(z) in arbitrary-precision arithmetic
/// (MPFR). Working precision is padded by the cancellation estimate
/// |z|^{1/alpha} * log10(e), so the result carries `digits` correct digits.
/// Slow by design; this is the trusted reference the fast paths are
/// validated against.
std::complex<double> ml_oracle(double alpha, std::complex<double> z,
                               int digits);

/// Same computation, value rendered as "re im" with `digits` significant
/// digits (for comparisons beyond double precision).
std::string ml_oracle_decimal(double alpha, std::complex<double> z,
                              int digits);

/// Relative difference |v_a - v_b| / |v_a| between two working precisions,
/// evaluated in arbitrary precision. Used for precision-doubling checks.
double ml_oracle_agreement(double alpha, std::complex<double> z, int digits_a,
                           int digits_b);

}  // namespace fracjc::mlf
