#pragma once

#include <complex>

#include "fracjc/jc_blocks.hpp"

namespace fracjc::dyson {

using cplx = std::complex<double>;
using jc::BlockIndex;
using jc::CsPair;
using jc::EvolutionBlock;
using jc::FractionalConfig;

/// Dyson map parameters of one block: eta = (e^kappa / sqrt(Lambda)) *
/// [[chi, lambda], [conj(lambda), 1]] with chi = Lambda + |lambda|^2.
struct DysonParams {
  double kappa = 0.0;
  cplx lambda{0.0, 0.0};
  double Lambda = 1.0;

  double chi() const { return Lambda + std::norm(lambda); }
  static DysonParams identity() { return {}; }
  void check() const;
};

struct ZetaXi {
  cplx zeta_plus, zeta_minus, xi_plus, xi_minus;
};

/// Full coefficient algebra of the U(2) block at one (n, t).
struct CoefficientSet {
  cplx zeta_plus, zeta_minus, xi_plus, xi_minus;
  cplx d;        // D = C^2 - e^{-i pi alpha} S^2
  double delta;  // (1/2) Im ln D, principal value
  cplx nu_plus, nu_minus;
  cplx varpi_plus, varpi_minus;
};

/// Hermitian positive-definite metric Theta = eta^dagger eta of one block.
struct MetricOperator {
  EvolutionBlock theta;
  std::pair<double, double> eigenvalues() const;
};

ZetaXi zeta_xi(const CsPair& cs, double alpha, const DysonParams& dyson0);

/// Dyson parameters at time t imposed by unitarity. Throws SingularD at an
/// exceptional point (|D| < 1e-14) and MetricCollapse if Lambda <= 0.
DysonParams dyson_at(const CsPair& cs, double alpha,
                     const DysonParams& dyson0);

/// zeta/xi -> nu -> varpi with the |varpi+|^2 + |varpi-|^2 = 1 postcondition
/// checked to 1e-10 (UnitarityResidual on failure).
CoefficientSet coefficient_set(const CsPair& cs, double alpha,
                               const DysonParams& dyson0,
                               const DysonParams& dyson_t);

/// Unitary U(2) block e^{i delta} [[w+, w-], [-conj(w-), conj(w+)]].
EvolutionBlock unitary_block(const FractionalConfig& cfg, BlockIndex n,
                             double t, const DysonParams& dyson0,
                             double ml_tol = mlf::kDefaultTol);

/// Independent route u = eta(t) U(t) eta(0)^{-1}; test cross-check only.
EvolutionBlock unitary_block_via_conjugation(const FractionalConfig& cfg,
                                             BlockIndex n, double t,
                                             const DysonParams& dyson0,
                                             double ml_tol = mlf::kDefaultTol);

/// The eta matrix of one block.
EvolutionBlock dyson_matrix(const DysonParams& p);

/// Analytic 2x2 inverse of eta (det = e^{2 kappa}).
EvolutionBlock dyson_matrix_inverse(const DysonParams& p);

MetricOperator metric_at(const DysonParams& p);

}  // namespace fracjc::dyson
