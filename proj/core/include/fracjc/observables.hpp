#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fracjc/dynamics.hpp"

namespace fracjc::obs {

using cplx = std::complex<double>;
using dynamics::JCState;

/// Reduced atomic density matrix in the basis (|e>, |g>).
struct AtomDensity {
  double rho_ee = 1.0;
  double rho_gg = 0.0;
  cplx rho_eg{0.0, 0.0};
};

/// Reduced field density matrix on |0>..|n_max+1|.
struct FieldDensity {
  Eigen::MatrixXcd matrix;
};

/// W = sum(|A_{e,n}|^2 - |A_{g,n}|^2) - |ground_amp|^2, in [-1, 1].
double population_inversion(const JCState& state);

AtomDensity reduced_atom_density(const JCState& state);

FieldDensity reduced_field_density(const JCState& state);

/// Closed-form qubit entropy from the 2x2 eigenvalues; natural log.
double von_neumann_entropy_qubit(const AtomDensity& rho);

/// Hermitian eigendecomposition entropy; eigenvalues in [-1e-12, 0) are
/// clamped to 0, anything below -1e-10 raises IndefiniteDensity.
double von_neumann_entropy_dense(const FieldDensity& rho);

}  // namespace fracjc::obs
