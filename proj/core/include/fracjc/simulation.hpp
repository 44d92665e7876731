#pragma once

#include <complex>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "fracjc/dynamics.hpp"
#include "fracjc/observables.hpp"

namespace fracjc::sim {

using cplx = std::complex<double>;

struct RunConfig {
  std::vector<double> alphas{1.0, 0.75, 0.5};
  double beta_re = 2.0;
  double beta_im = 0.0;
  double mu = 1.0;
  double t_max = 25.0;
  int steps = 1000;
  int n_max = -1;  // -1 = auto from the Poisson tail bound
  double tail_tol = 1e-12;
  double ml_tol = 1e-12;
  double kappa0 = 0.0;
  double lambda0_re = 0.0;
  double lambda0_im = 0.0;
  double Lambda0 = 1.0;
  std::set<std::string> observables{"inversion", "entropy"};
  std::string output_path;

  cplx beta() const { return {beta_re, beta_im}; }
  dyson::DysonParams dyson0() const {
    return {kappa0, cplx(lambda0_re, lambda0_im), Lambda0};
  }
};

struct Row {
  double t;
  double alpha;
  double W;
  double S_vn;
  double norm;
  double unitarity_residual;
  double metric_residual;
  int delta_unwrap_flag;
};

struct TimeSeries {
  std::vector<Row> rows;
};

/// All violated invariants, without running anything.
std::vector<std::string> validate(const RunConfig& config);

/// Full sweep: for each alpha and each grid time, evolve from t = 0 (never
/// incrementally), compute observables and diagnostics. Writes CSV when
/// output_path is set. Throws RunError naming (alpha, n, t) on any module
/// error or diagnostic gate violation.
TimeSeries run(const RunConfig& config);

/// Deterministic serialization, 17 significant digits, schema line first.
void write_csv(const TimeSeries& series, std::ostream& os);
std::string to_csv(const TimeSeries& series);

/// Worker cap: FRACQJC_THREADS env var, else hardware concurrency.
unsigned max_threads();

}  // namespace fracjc::sim
