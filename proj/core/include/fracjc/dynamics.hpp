#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fracjc/unitarization.hpp"

namespace fracjc::dynamics {

using cplx = std::complex<double>;
using dyson::DysonParams;
using jc::FractionalConfig;

/// Coherent field |beta> truncated at n_max with tracked tail mass.
struct CoherentSpec {
  cplx beta{0.0, 0.0};
  int n_max = 0;
  double tail_tol = 1e-12;
};

/// Global state: the |g,0> amplitude plus the per-block amplitude pairs
/// (A_{e,n}, A_{g,n}) for n = 0..n_max.
struct JCState {
  cplx ground_amp{0.0, 0.0};
  std::vector<std::pair<cplx, cplx>> pairs;  // (a_e, a_g)

  double norm_sq() const;
  int n_max() const { return static_cast<int>(pairs.size()) - 1; }
};

/// Poisson tail mass beyond n_max for coherent amplitude beta.
double coherent_tail(cplx beta, int n_max);

/// Smallest n_max whose tail is below tail_tol (hard cap 256).
int auto_n_max(cplx beta, double tail_tol, int hard_cap = 256);

/// c_0..c_{n_max} by the stable recurrence c_{n+1} = c_n beta / sqrt(n+1).
/// No renormalization; throws TruncationTooSmall when the tail exceeds
/// tail_tol.
std::vector<cplx> coherent_amplitudes(const CoherentSpec& spec);

/// Atom excited, field coherent: a_{e,n} = c_n, everything else zero.
JCState initial_state(const CoherentSpec& spec);

/// Maps the t = 0 state to time t through the unitary blocks. Fractional
/// evolution always starts from t = 0; never compose increments for
/// alpha < 1.
JCState evolve(const JCState& state0, const FractionalConfig& cfg, double t,
               const DysonParams& dyson0,
               double ml_tol = mlf::kDefaultTol);

}  // namespace fracjc::dynamics
