#include "fracjc/mlf_oracle.hpp"

#include <mpfr.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "fracjc/errors.hpp"

namespace fracjc::mlf {

namespace {

// Minimal RAII shims around mpfr_t; everything rounds to nearest.
struct Real {
  mpfr_t v;
  explicit Real(mpfr_prec_t p) { mpfr_init2(v, p); mpfr_set_zero(v, 1); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

struct Cplx {
  Real re, im;
  explicit Cplx(mpfr_prec_t p) : re(p), im(p) {}
};

void cplx_set_d(Cplx& out, std::complex<double> z) {
  mpfr_set_d(out.re.v, z.real(), MPFR_RNDN);
  mpfr_set_d(out.im.v, z.imag(), MPFR_RNDN);
}

// out = a * b; out must not alias a or b
void cplx_mul(Cplx& out, const Cplx& a, const Cplx& b, Real& t) {
  mpfr_mul(out.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(out.re.v, out.re.v, t.v, MPFR_RNDN);
  mpfr_mul(out.im.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_add(out.im.v, out.im.v, t.v, MPFR_RNDN);
}

void cplx_div_real(Cplx& out, const Cplx& a, const Real& d) {
  mpfr_div(out.re.v, a.re.v, d.v, MPFR_RNDN);
  mpfr_div(out.im.v, a.im.v, d.v, MPFR_RNDN);
}

void cplx_add(Cplx& out, const Cplx& a) {
  mpfr_add(out.re.v, out.re.v, a.re.v, MPFR_RNDN);
  mpfr_add(out.im.v, out.im.v, a.im.v, MPFR_RNDN);
}

// |re| + |im|, a cheap magnitude proxy for the stopping rule
void cplx_mag1(Real& out, const Cplx& a, Real& t) {
  mpfr_abs(out.v, a.re.v, MPFR_RNDN);
  mpfr_abs(t.v, a.im.v, MPFR_RNDN);
  mpfr_add(out.v, out.v, t.v, MPFR_RNDN);
}

// Smallest q <= 64 with alpha*q an integer (within double rounding),
// 0 when alpha is not usefully rational.
int rational_denominator(double alpha) {
  for (int q = 1; q <= 64; ++q) {
    double t = alpha * q;
    if (std::abs(t - std::round(t)) < 1e-12 * q && std::round(t) >= 1.0)
      return q;
  }
  return 0;
}

// Gamma(alpha k + 1) supplier. For rational alpha = p/q it keeps q running
// chains advanced by the recurrence Gamma(x+p) = x (x+1) ... (x+p-1) Gamma(x),
// one exact mpfr multiplication per factor; otherwise mpfr_gamma per term.
class GammaSupplier {
 public:
  GammaSupplier(double alpha, mpfr_prec_t prec)
      : alpha_(alpha), prec_(prec), q_(rational_denominator(alpha)) {
    if (q_ > 0) {
      p_ = static_cast<long>(std::llround(alpha * q_));
      // Seed from the exact rational p r / q, not from the double alpha:
      // the chain advances by the integer p, so any rounding in the seed
      // would drift the gamma arguments linearly in k.
      for (int r = 0; r < q_; ++r) {
        gam_.emplace_back(new Real(prec_));
        arg_.emplace_back(new Real(prec_));
        mpfr_set_si(arg_[r]->v, p_ * r, MPFR_RNDN);
        mpfr_div_si(arg_[r]->v, arg_[r]->v, q_, MPFR_RNDN);
        mpfr_add_ui(arg_[r]->v, arg_[r]->v, 1, MPFR_RNDN);
        mpfr_gamma(gam_[r]->v, arg_[r]->v, MPFR_RNDN);
      }
    }
  }

  // value of Gamma(alpha k + 1); k must be supplied in increasing order
  void get(Real& out, long k) {
    if (q_ == 0) {
      Real x(prec_);
      mpfr_set_d(x.v, alpha_, MPFR_RNDN);
      mpfr_mul_si(x.v, x.v, k, MPFR_RNDN);
      mpfr_add_ui(x.v, x.v, 1, MPFR_RNDN);
      mpfr_gamma(out.v, x.v, MPFR_RNDN);
      return;
    }
    int r = static_cast<int>(k % q_);
    long cycle = k / q_;
    while (cycles_[r] < cycle) {
      for (long j = 0; j < p_; ++j) {
        mpfr_mul(gam_[r]->v, gam_[r]->v, arg_[r]->v, MPFR_RNDN);
        mpfr_add_ui(arg_[r]->v, arg_[r]->v, 1, MPFR_RNDN);
      }
      ++cycles_[r];
    }
    mpfr_set(out.v, gam_[r]->v, MPFR_RNDN);
  }

 private:
  double alpha_;
  mpfr_prec_t prec_;
  int q_;
  long p_ = 0;
  std::vector<std::unique_ptr<Real>> gam_;
  std::vector<std::unique_ptr<Real>> arg_;
  std::vector<long> cycles_ = std::vector<long>(64, 0);
};

// Decimal-digit magnitude of the smallest value the result can take: exactly
// exp(Re z) at alpha = 1, and no smaller than ~1/(|z| Gamma(1-alpha))
// otherwise.
double small_result_digits(double alpha, std::complex<double> z) {
  constexpr double kLog10E = 0.4342944819;
  if (alpha == 1.0) return std::max(0.0, -z.real()) * kLog10E;
  return std::log10(1.0 + std::abs(z)) +
         std::max(0.0, std::lgamma(1.0 - alpha)) * kLog10E;
}

mpfr_prec_t working_prec(double alpha, std::complex<double> z, int digits) {
  constexpr double kLog10E = 0.4342944819;
  double r = std::abs(z);
  // Largest series term is ~exp(|z|^{1/alpha}); pad precision to absorb the
  // cancellation down to the scale of the result, which can itself be
  // exponentially small.
  double cancel_digits = r > 1.0 ? std::pow(r, 1.0 / alpha) * kLog10E : 0.0;
  double total = digits + cancel_digits + small_result_digits(alpha, z) + 25.0;
  if (total > 600000.0)
    throw Error("ml_oracle: cancellation budget infeasible for this (alpha,z)");
  return static_cast<mpfr_prec_t>(std::ceil(total * 3.321928)) + 32;
}

void ml_sum(double alpha, std::complex<double> z, int digits, Cplx& out) {
  if (digits < 20 || digits > 200)
    throw ValidationError("ml_oracle: digits must be in [20,200]");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ValidationError("ml_oracle: alpha must be in (0,1]");
  const mpfr_prec_t prec = working_prec(alpha, z, digits);

  Cplx zz(prec), zpow(prec), term(prec), sum(prec), next(prec);
  Real gam(prec), tmag(prec), prev_tmag(prec), thresh(prec), t(prec);
  cplx_set_d(zz, z);
  mpfr_set_ui(zpow.re.v, 1, MPFR_RNDN);  // z^0

  GammaSupplier gamma(alpha, prec);

  // Stop once terms are decreasing and below 10^{-(digits+10)} relative to
  // the smallest magnitude the result may have. The running partial sum is
  // no yardstick here: it can tower many orders above the final value
  // before the cancellation collapses it.
  const long floor_digits =
      static_cast<long>(std::ceil(small_result_digits(alpha, z)));
  mpfr_set_ui(thresh.v, 10, MPFR_RNDN);
  mpfr_pow_si(thresh.v, thresh.v, -(digits + 10 + floor_digits), MPFR_RNDN);
  mpfr_set_inf(prev_tmag.v, 1);

  const long k_cap = 5000000;
  int streak = 0;
  for (long k = 0;; ++k) {
    if (k > k_cap) throw Error("ml_oracle: term cap exceeded");
    gamma.get(gam, k);
    cplx_div_real(term, zpow, gam);
    cplx_add(sum, term);

    cplx_mag1(tmag, term, t);
    if (mpfr_cmp(tmag.v, thresh.v) < 0 &&
        mpfr_cmp(tmag.v, prev_tmag.v) <= 0) {
      if (++streak == 3) break;
    } else {
      streak = 0;
    }
    mpfr_set(prev_tmag.v, tmag.v, MPFR_RNDN);

    cplx_mul(next, zpow, zz, t);
    mpfr_swap(zpow.re.v, next.re.v);
    mpfr_swap(zpow.im.v, next.im.v);
  }
  mpfr_set(out.re.v, sum.re.v, MPFR_RNDN);
  mpfr_set(out.im.v, sum.im.v, MPFR_RNDN);
}

}  // namespace

std::complex<double> ml_oracle(double alpha, std::complex<double> z,
                               int digits) {
  const mpfr_prec_t prec = working_prec(alpha, z, digits);
  Cplx out(prec);
  ml_sum(alpha, z, digits, out);
  return {mpfr_get_d(out.re.v, MPFR_RNDN), mpfr_get_d(out.im.v, MPFR_RNDN)};
}

std::string ml_oracle_decimal(double alpha, std::complex<double> z,
                              int digits) {
  const mpfr_prec_t prec = working_prec(alpha, z, digits);
  Cplx out(prec);
  ml_sum(alpha, z, digits, out);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg %.*Rg", digits, out.re.v, digits, out.im.v);
  std::string result(s);
  mpfr_free_str(s);
  return result;
}

double ml_oracle_agreement(double alpha, std::complex<double> z, int digits_a,
                           int digits_b) {
  const mpfr_prec_t pa = working_prec(alpha, z, digits_a);
  const mpfr_prec_t pb = working_prec(alpha, z, digits_b);
  const mpfr_prec_t p = std::max(pa, pb);
  Cplx va(pa), vb(pb);
  ml_sum(alpha, z, digits_a, va);
  ml_sum(alpha, z, digits_b, vb);
  Real dr(p), di(p), num(p), den(p);
  mpfr_sub(dr.v, va.re.v, vb.re.v, MPFR_RNDN);
  mpfr_sub(di.v, va.im.v, vb.im.v, MPFR_RNDN);
  mpfr_hypot(num.v, dr.v, di.v, MPFR_RNDN);
  mpfr_hypot(den.v, va.re.v, va.im.v, MPFR_RNDN);
  mpfr_div(num.v, num.v, den.v, MPFR_RNDN);
  return mpfr_get_d(num.v, MPFR_RNDN);
}

}  // namespace fracjc::mlf
