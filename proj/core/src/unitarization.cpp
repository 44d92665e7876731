#include "fracjc/unitarization.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "fracjc/errors.hpp"

namespace fracjc::dyson {

namespace {
constexpr double kSingularD = 1e-14;
constexpr double kVarpiNormTol = 1e-10;

double frob(const EvolutionBlock& b) {
  double s = 0;
  for (const auto& e : b.m) s += std::norm(e);
  return std::sqrt(s);
}
}  // namespace

void DysonParams::check() const {
  if (!(Lambda > 0.0))
    throw MetricCollapse("DysonParams: Lambda must be positive, got " +
                         std::to_string(Lambda));
}

ZetaXi zeta_xi(const CsPair& cs, double alpha, const DysonParams& dyson0) {
  dyson0.check();
  const cplx ph = jc::phase_factor(alpha);
  const cplx l0 = dyson0.lambda;
  const double chi0 = dyson0.chi();
  return {
      ph * cs.s - std::conj(l0) * cs.c,        // zeta+
      ph * l0 * cs.s - chi0 * cs.c,            // zeta-
      cs.c - ph * std::conj(l0) * cs.s,        // xi+
      l0 * cs.c - ph * chi0 * cs.s,            // xi-
  };
}

DysonParams dyson_at(const CsPair& cs, double alpha,
                     const DysonParams& dyson0) {
  const cplx d = jc::block_d(cs, alpha);
  const double abs_d = std::abs(d);
  if (abs_d < kSingularD)
    throw SingularD("dyson_at: |D| = " + std::to_string(abs_d) +
                    " (exceptional point of the Dyson map)");
  const ZetaXi zx = zeta_xi(cs, alpha, dyson0);

  const double l0term = dyson0.Lambda * abs_d;  // e^{Re ln D} = |D|
  const double denom =
      std::norm(zx.xi_plus) + std::norm(zx.xi_minus) + l0term;

  DysonParams p;
  p.kappa = dyson0.kappa - 0.5 * std::log(abs_d);
  const double chi =
      (std::norm(zx.zeta_plus) + std::norm(zx.zeta_minus) + l0term) / denom;
  p.lambda = -(zx.xi_plus * std::conj(zx.zeta_plus) +
               zx.xi_minus * std::conj(zx.zeta_minus)) /
             denom;
  p.Lambda = chi - std::norm(p.lambda);
  if (!(p.Lambda > 0.0))
    throw MetricCollapse("dyson_at: Lambda(t) = " + std::to_string(p.Lambda) +
                         " is not positive");
  return p;
}

CoefficientSet coefficient_set(const CsPair& cs, double alpha,
                               const DysonParams& dyson0,
                               const DysonParams& dyson_t) {
  const cplx d = jc::block_d(cs, alpha);
  const ZetaXi zx = zeta_xi(cs, alpha, dyson0);

  CoefficientSet out;
  out.zeta_plus = zx.zeta_plus;
  out.zeta_minus = zx.zeta_minus;
  out.xi_plus = zx.xi_plus;
  out.xi_minus = zx.xi_minus;
  out.d = d;
  out.delta = 0.5 * std::arg(d);

  const double pref = std::exp(dyson_t.kappa - dyson0.kappa) /
                      std::sqrt(dyson_t.Lambda * dyson0.Lambda);
  const cplx lt_conj = std::conj(dyson_t.lambda);
  out.nu_plus = pref * (zx.zeta_plus + lt_conj * zx.xi_plus);
  out.nu_minus = -pref * (zx.zeta_minus + lt_conj * zx.xi_minus);

  const cplx eid = std::polar(1.0, out.delta);
  out.varpi_plus = eid * std::conj(out.nu_minus);
  out.varpi_minus = -eid * std::conj(out.nu_plus);

  const double norm_resid =
      std::abs(std::norm(out.varpi_plus) + std::norm(out.varpi_minus) - 1.0);
  if (norm_resid > kVarpiNormTol)
    throw UnitarityResidual(
        "coefficient_set: |varpi+|^2 + |varpi-|^2 deviates from 1 by " +
        std::to_string(norm_resid) + "; retry with tighter ml tol");
  return out;
}

EvolutionBlock unitary_block(const FractionalConfig& cfg, BlockIndex n,
                             double t, const DysonParams& dyson0,
                             double ml_tol) {
  if (t < 0.0) throw ValidationError("unitary_block: t must be >= 0");
  const CsPair cs = jc::cs_functions(cfg, n, t, ml_tol);
  const DysonParams dt = dyson_at(cs, cfg.alpha, dyson0);
  const CoefficientSet co = coefficient_set(cs, cfg.alpha, dyson0, dt);
  const cplx eid = std::polar(1.0, co.delta);
  return {{eid * co.varpi_plus, eid * co.varpi_minus,
           -eid * std::conj(co.varpi_minus), eid * std::conj(co.varpi_plus)}};
}

EvolutionBlock dyson_matrix(const DysonParams& p) {
  p.check();
  const double pref = std::exp(p.kappa) / std::sqrt(p.Lambda);
  return {{pref * p.chi(), pref * p.lambda, pref * std::conj(p.lambda),
           cplx(pref, 0.0)}};
}

EvolutionBlock dyson_matrix_inverse(const DysonParams& p) {
  p.check();
  // det eta = e^{2 kappa}; inverse written out analytically
  const double pref = std::exp(-p.kappa) / std::sqrt(p.Lambda);
  EvolutionBlock inv{{cplx(pref, 0.0), -pref * p.lambda,
                      -pref * std::conj(p.lambda), pref * p.chi()}};
  const double cond = frob(dyson_matrix(p)) * frob(inv);
  if (cond > 1e8)
    std::cerr << "fracjc: warning: eta inversion condition number " << cond
              << "\n";
  return inv;
}

EvolutionBlock unitary_block_via_conjugation(const FractionalConfig& cfg,
                                             BlockIndex n, double t,
                                             const DysonParams& dyson0,
                                             double ml_tol) {
  const CsPair cs = jc::cs_functions(cfg, n, t, ml_tol);
  const DysonParams dt = dyson_at(cs, cfg.alpha, dyson0);
  const EvolutionBlock u_nonunitary = jc::nonunitary_block(cfg, n, t, ml_tol);
  return dyson_matrix(dt) * u_nonunitary * dyson_matrix_inverse(dyson0);
}

std::pair<double, double> MetricOperator::eigenvalues() const {
  const double tr = theta.m[0].real() + theta.m[3].real();
  const double det = theta.det().real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

MetricOperator metric_at(const DysonParams& p) {
  const EvolutionBlock eta = dyson_matrix(p);
  return {eta.adjoint() * eta};
}

}  // namespace fracjc::dyson
