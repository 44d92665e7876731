#include "fracjc/jc_blocks.hpp"

#include <numbers>
#include <string>

#include "fracjc/errors.hpp"

namespace fracjc::jc {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FractionalConfig::check() const {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ValidationError("FractionalConfig: alpha must be in (0,1]");
  if (!(mu > 0.0)) throw ValidationError("FractionalConfig: mu must be > 0");
}

cplx phase_factor(double alpha) {
  return std::polar(1.0, -kPi * alpha / 2.0);
}

cplx minus_one_pow_neg(double alpha) { return std::polar(1.0, -kPi * alpha); }

double block_coupling(BlockIndex n, const FractionalConfig& cfg) {
  if (n.n < 0) throw ValidationError("block_coupling: n must be >= 0");
  return cfg.mu * std::sqrt(static_cast<double>(n.n) + 1.0);
}

CsPair cs_functions(const FractionalConfig& cfg, BlockIndex n, double t,
                    double ml_tol) {
  cfg.check();
  if (t < 0.0) throw ValidationError("cs_functions: t must be >= 0");
  if (t == 0.0) return {};  // exact identity, avoids 0^alpha edge cases

  const cplx ph = phase_factor(cfg.alpha);
  const double mu_n = block_coupling(n, cfg);
  const cplx z = ph * mu_n * std::pow(t, cfg.alpha);
  const cplx ep = mlf::mittag_leffler(cfg.alpha, z, ml_tol).value;
  const cplx em = mlf::mittag_leffler(cfg.alpha, -z, ml_tol).value;
  return {(ep + em) / 2.0, (ep - em) / (2.0 * ph)};
}

EvolutionBlock nonunitary_block(const FractionalConfig& cfg, BlockIndex n,
                                double t, double ml_tol) {
  const CsPair cs = cs_functions(cfg, n, t, ml_tol);
  const cplx off = phase_factor(cfg.alpha) * cs.s;
  return {{cs.c, off, off, cs.c}};
}

cplx block_d(const CsPair& cs, double alpha) {
  return cs.c * cs.c - minus_one_pow_neg(alpha) * cs.s * cs.s;
}

}  // namespace fracjc::jc
