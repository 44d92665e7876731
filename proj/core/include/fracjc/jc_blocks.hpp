#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "fracjc/mlf.hpp"

namespace fracjc::jc {

using cplx = std::complex<double>;

/// Resonant RWA Jaynes-Cummings configuration; everything dimensionless.
struct FractionalConfig {
  double alpha = 1.0;  // fractional order, (0,1]
  double mu = 1.0;     // atom-field coupling, > 0
  static constexpr double hbar_alpha = 1.0;
  void check() const;
};

/// Photon number n labeling the invariant subspace {|e,n>, |g,n+1>}.
struct BlockIndex {
  int n = 0;
};

/// The C and S coefficient pair of a propagator block; (1, 0) at t = 0.
struct CsPair {
  cplx c{1.0, 0.0};
  cplx s{0.0, 0.0};
};

/// 2x2 complex matrix in the ordered basis (|e,n>, |g,n+1>),
/// row-major entries {m00, m01, m10, m11}.
struct EvolutionBlock {
  std::array<cplx, 4> m{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};

  static EvolutionBlock identity() { return {}; }

  EvolutionBlock operator*(const EvolutionBlock& o) const {
    return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
             m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
  }
  EvolutionBlock adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
             std::conj(m[3])}};
  }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

  std::pair<cplx, cplx> apply(cplx top, cplx bottom) const {
    return {m[0] * top + m[1] * bottom, m[2] * top + m[3] * bottom};
  }

  double frobenius_distance(const EvolutionBlock& o) const {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += std::norm(m[i] - o.m[i]);
    return std::sqrt(s);
  }
  /// || m^dagger m - I ||_F
  double unitarity_residual() const {
    return (adjoint() * *this).frobenius_distance(identity());
  }
};

/// e^{-i pi alpha / 2}, the principal-branch value of i^{-alpha}.
cplx phase_factor(double alpha);

/// e^{-i pi alpha}, the principal-branch value of (-1)^{-alpha}.
cplx minus_one_pow_neg(double alpha);

/// Effective coupling mu sqrt(n+1) of the n-th block.
double block_coupling(BlockIndex n, const FractionalConfig& cfg);

/// C and S from two Mittag-Leffler evaluations at z = +-i^{-alpha} mu_n t^alpha.
CsPair cs_functions(const FractionalConfig& cfg, BlockIndex n, double t,
                    double ml_tol = mlf::kDefaultTol);

/// Non-unitary propagator block [[C, i^{-a} S], [i^{-a} S, C]].
EvolutionBlock nonunitary_block(const FractionalConfig& cfg, BlockIndex n,
                                double t, double ml_tol = mlf::kDefaultTol);

/// D = C^2 - e^{-i pi alpha} S^2 = det(nonunitary_block).
cplx block_d(const CsPair& cs, double alpha);

}  // namespace fracjc::jc
