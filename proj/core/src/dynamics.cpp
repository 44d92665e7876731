#include "fracjc/dynamics.hpp"

#include <cmath>
#include <string>

#include "fracjc/errors.hpp"

namespace fracjc::dynamics {

double JCState::norm_sq() const {
  double s = std::norm(ground_amp);
  for (const auto& [ae, ag] : pairs) s += std::norm(ae) + std::norm(ag);
  return s;
}

double coherent_tail(cplx beta, int n_max) {
  const double nbar = std::norm(beta);
  double p = std::exp(-nbar);  // |c_0|^2
  double cum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    cum += p;
    p *= nbar / (n + 1);
  }
  return std::max(0.0, 1.0 - cum);
}

int auto_n_max(cplx beta, double tail_tol, int hard_cap) {
  const double nbar = std::norm(beta);
  double p = std::exp(-nbar);
  double tail = 1.0;
  for (int n = 0; n <= hard_cap; ++n) {
    tail -= p;
    if (tail < tail_tol) return n;
    p *= nbar / (n + 1);
  }
  return hard_cap;
}

std::vector<cplx> coherent_amplitudes(const CoherentSpec& spec) {
  if (!(spec.tail_tol > 0.0) || spec.tail_tol > 1e-6)
    throw ValidationError("coherent_amplitudes: tail_tol must be in (0,1e-6]");
  if (spec.n_max < 0)
    throw ValidationError("coherent_amplitudes: n_max must be >= 0");
  const double tail = coherent_tail(spec.beta, spec.n_max);
  if (tail >= spec.tail_tol)
    throw TruncationTooSmall("coherent_amplitudes: tail " +
                             std::to_string(tail) + " exceeds tail_tol at n_max " +
                             std::to_string(spec.n_max));
  std::vector<cplx> c(spec.n_max + 1);
  c[0] = std::exp(-0.5 * std::norm(spec.beta));
  for (int n = 0; n < spec.n_max; ++n)
    c[n + 1] = c[n] * spec.beta / std::sqrt(n + 1.0);
  return c;
}

JCState initial_state(const CoherentSpec& spec) {
  const auto c = coherent_amplitudes(spec);
  JCState s;
  s.ground_amp = 0.0;
  s.pairs.resize(c.size());
  for (size_t n = 0; n < c.size(); ++n) s.pairs[n] = {c[n], cplx(0.0, 0.0)};
  return s;
}

JCState evolve(const JCState& state0, const FractionalConfig& cfg, double t,
               const DysonParams& dyson0, double ml_tol) {
  if (t < 0.0) throw ValidationError("evolve: t must be >= 0");
  JCState out;
  out.ground_amp = state0.ground_amp;  // the ground sector is frozen
  out.pairs.resize(state0.pairs.size());
  for (size_t n = 0; n < state0.pairs.size(); ++n) {
    try {
      const auto u = dyson::unitary_block(
          cfg, jc::BlockIndex{static_cast<int>(n)}, t, dyson0, ml_tol);
      out.pairs[n] = u.apply(state0.pairs[n].first, state0.pairs[n].second);
    } catch (const Error& e) {
      throw RunError(error_kind(e), cfg.alpha, static_cast<int>(n), t,
                     "evolve: block n=" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fracjc::dynamics
