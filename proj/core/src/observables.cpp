#include "fracjc/observables.hpp"

#include <cmath>
#include <string>

#include "fracjc/errors.hpp"

namespace fracjc::obs {

namespace {
double entropy_term(double lam) {
  return lam > 0.0 ? -lam * std::log(lam) : 0.0;  // 0 ln 0 := 0
}
}  // namespace

double population_inversion(const JCState& state) {
  double w = -std::norm(state.ground_amp);
  for (const auto& [ae, ag] : state.pairs) w += std::norm(ae) - std::norm(ag);
  return w;
}

AtomDensity reduced_atom_density(const JCState& state) {
  AtomDensity rho;
  rho.rho_ee = 0.0;
  rho.rho_gg = std::norm(state.ground_amp);
  rho.rho_eg = cplx(0.0, 0.0);
  const int nmax = state.n_max();
  for (int n = 0; n <= nmax; ++n) {
    rho.rho_ee += std::norm(state.pairs[n].first);
    rho.rho_gg += std::norm(state.pairs[n].second);
  }
  // |e,n+1> pairs with |g,(n+1)+0>: the field kets match at photon number n+1
  for (int n = 0; n + 1 <= nmax; ++n)
    rho.rho_eg +=
        state.pairs[n + 1].first * std::conj(state.pairs[n].second);
  // |e,0> and |g,0> coherence through the ground amplitude
  if (nmax >= 0)
    rho.rho_eg += state.pairs[0].first * std::conj(state.ground_amp);
  return rho;
}

FieldDensity reduced_field_density(const JCState& state) {
  const int nmax = state.n_max();
  const int dim = nmax + 2;
  Eigen::VectorXcd psi_e = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd psi_g = Eigen::VectorXcd::Zero(dim);
  for (int n = 0; n <= nmax; ++n) {
    psi_e(n) = state.pairs[n].first;
    psi_g(n + 1) = state.pairs[n].second;
  }
  psi_g(0) = state.ground_amp;
  FieldDensity rho;
  rho.matrix = psi_e * psi_e.adjoint() + psi_g * psi_g.adjoint();
  return rho;
}

double von_neumann_entropy_qubit(const AtomDensity& rho) {
  const double w = rho.rho_ee - rho.rho_gg;
  const double r =
      std::sqrt(w * w + 4.0 * std::norm(rho.rho_eg));
  const double lp = 0.5 * (1.0 + r);
  const double lm = 0.5 * (1.0 - r);
  return entropy_term(lp) + entropy_term(std::max(0.0, lm));
}

double von_neumann_entropy_dense(const FieldDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix,
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lam : es.eigenvalues()) {
    if (lam < -1e-10)
      throw IndefiniteDensity("von_neumann_entropy_dense: eigenvalue " +
                              std::to_string(lam));
    s += entropy_term(std::max(0.0, lam));
  }
  return s;
}

}  // namespace fracjc::obs
