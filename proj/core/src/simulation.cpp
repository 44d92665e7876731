#include "fracjc/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "fracjc/errors.hpp"
#include "fracjc/unitarization.hpp"

namespace fracjc::sim {

namespace {

constexpr double kRowNormGate = 1e-8;
constexpr double kRowUnitarityGate = 1e-8;
constexpr double kPi = std::numbers::pi;

const std::set<std::string> kKnownObservables{"inversion", "entropy",
                                              "amplitudes", "diagnostics"};

// Per-block, per-time results produced by one worker.
struct BlockSeries {
  std::vector<cplx> u11, u21;  // columns acting on (c_n, 0)
  std::vector<double> uresid;
  std::vector<double> mresid;
  std::vector<int> unwrap_flag;
};

BlockSeries compute_block(const jc::FractionalConfig& cfg, int n,
                          const std::vector<double>& times,
                          const dyson::DysonParams& dyson0, double ml_tol) {
  BlockSeries out;
  const size_t nt = times.size();
  out.u11.resize(nt);
  out.u21.resize(nt);
  out.uresid.resize(nt);
  out.mresid.resize(nt);
  out.unwrap_flag.assign(nt, 0);

  // Fixed probe vector for the modified-inner-product conservation check.
  const cplx v0(0.6, 0.0), v1(0.0, 0.8);
  const auto theta0 = dyson::metric_at(dyson0).theta;
  const auto q_of = [&](const jc::EvolutionBlock& big_u,
                        const jc::EvolutionBlock& theta) {
    auto [a, b] = big_u.apply(v0, v1);
    auto [ta, tb] = theta.apply(a, b);
    return (std::conj(a) * ta + std::conj(b) * tb).real();
  };
  const double q0 = q_of(jc::EvolutionBlock::identity(), theta0);

  double prev_delta = 0.0;
  const cplx ph = jc::phase_factor(cfg.alpha);
  for (size_t i = 0; i < nt; ++i) {
    const double t = times[i];
    try {
      const jc::CsPair cs =
          jc::cs_functions(cfg, jc::BlockIndex{n}, t, ml_tol);
      const auto dt = dyson::dyson_at(cs, cfg.alpha, dyson0);
      const auto co = dyson::coefficient_set(cs, cfg.alpha, dyson0, dt);
      const cplx eid = std::polar(1.0, co.delta);
      const jc::EvolutionBlock u{
          {eid * co.varpi_plus, eid * co.varpi_minus,
           -eid * std::conj(co.varpi_minus),
           eid * std::conj(co.varpi_plus)}};
      out.u11[i] = u.m[0];
      out.u21[i] = u.m[2];
      out.uresid[i] = u.unitarity_residual();

      const jc::EvolutionBlock big_u{{cs.c, ph * cs.s, ph * cs.s, cs.c}};
      const double q = q_of(big_u, dyson::metric_at(dt).theta);
      out.mresid[i] = std::abs(q - q0) / std::abs(q0);

      // Diagnostic only: the observables depend on D only through D/|D|,
      // so a branch jump in delta = (1/2) arg D cannot leak into them;
      // we still flag crossings of the principal branch cut.
      if (i > 0 && std::abs(co.delta - prev_delta) > kPi / 2.0)
        out.unwrap_flag[i] = 1;
      prev_delta = co.delta;
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      throw RunError(error_kind(e), cfg.alpha, n, t, e.what());
    }
  }
  return out;
}

void append_field(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

}  // namespace

unsigned max_threads() {
  if (const char* env = std::getenv("FRACQJC_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> findings;
  if (c.alphas.empty()) findings.push_back("at least one alpha is required");
  for (double a : c.alphas)
    if (!(a > 0.0) || a > 1.0)
      findings.push_back("alpha out of (0,1]: " + std::to_string(a));
  if (!(c.mu > 0.0)) findings.push_back("mu must be positive");
  if (c.steps < 2) findings.push_back("steps must be >= 2");
  if (!(c.t_max > 0.0)) findings.push_back("t_max must be positive");
  if (!(c.tail_tol > 0.0) || c.tail_tol > 1e-6)
    findings.push_back("tail_tol must be in (0,1e-6]");
  if (!(c.ml_tol >= 1e-15) || c.ml_tol > 1e-2)
    findings.push_back("ml_tol must be in [1e-15,1e-2]");
  if (!(c.Lambda0 > 0.0)) findings.push_back("Lambda0 must be positive");
  if (c.n_max < -1 || c.n_max > 256)
    findings.push_back("n_max must be -1 (auto) or in [0,256]");
  for (const auto& o : c.observables)
    if (!kKnownObservables.count(o))
      findings.push_back("unknown observable: " + o);
  return findings;
}

TimeSeries run(const RunConfig& config) {
  auto findings = validate(config);
  if (!findings.empty()) {
    std::string msg = "invalid config:";
    for (const auto& f : findings) msg += " [" + f + "]";
    throw ValidationError(msg);
  }

  const auto dyson0 = config.dyson0();
  dyson0.check();
  std::vector<double> times(config.steps);
  for (int i = 0; i < config.steps; ++i)
    times[i] = config.t_max * i / (config.steps - 1);

  TimeSeries series;
  for (double alpha : config.alphas) {
    const jc::FractionalConfig cfg{alpha, config.mu};
    const int n_max = config.n_max >= 0
                          ? config.n_max
                          : dynamics::auto_n_max(config.beta(),
                                                 config.tail_tol);
    const auto c = dynamics::coherent_amplitudes(
        {config.beta(), n_max, config.tail_tol});
    const int n_blocks = n_max + 1;

    // Blocks are independent; a worker pool walks them via a shared counter
    // and the assembly below runs in a fixed order, so the output does not
    // depend on the thread count.
    std::vector<BlockSeries> blocks(n_blocks);
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (int n = next.fetch_add(1); n < n_blocks; n = next.fetch_add(1)) {
        try {
          blocks[n] = compute_block(cfg, n, times, dyson0, config.ml_tol);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    const unsigned n_workers =
        std::min<unsigned>(max_threads(), static_cast<unsigned>(n_blocks));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    const double tail = dynamics::coherent_tail(config.beta(), n_max);
    const double expected_norm = std::sqrt(1.0 - tail);
    for (int i = 0; i < config.steps; ++i) {
      dynamics::JCState state;
      state.ground_amp = 0.0;
      state.pairs.resize(n_blocks);
      double uresid = 0.0, mresid = 0.0;
      int flag = 0;
      for (int n = 0; n < n_blocks; ++n) {
        state.pairs[n] = {c[n] * blocks[n].u11[i], c[n] * blocks[n].u21[i]};
        uresid = std::max(uresid, blocks[n].uresid[i]);
        mresid = std::max(mresid, blocks[n].mresid[i]);
        flag |= blocks[n].unwrap_flag[i];
      }
      const double norm = std::sqrt(state.norm_sq());
      if (std::abs(norm - expected_norm) > kRowNormGate ||
          uresid > kRowUnitarityGate)
        throw RunError("GateViolation", alpha, -1, times[i],
                       "row diagnostics out of budget: |norm-expected|=" +
                           std::to_string(std::abs(norm - expected_norm)) +
                           " unitarity=" + std::to_string(uresid));
      Row row;
      row.t = times[i];
      row.alpha = alpha;
      row.W = obs::population_inversion(state);
      row.S_vn =
          obs::von_neumann_entropy_qubit(obs::reduced_atom_density(state));
      row.norm = norm;
      row.unitarity_residual = uresid;
      row.metric_residual = mresid;
      row.delta_unwrap_flag = flag;
      series.rows.push_back(row);
    }
  }

  if (!config.output_path.empty()) {
    std::ofstream os(config.output_path, std::ios::binary);
    if (!os)
      throw Error("run: cannot open output path " + config.output_path);
    write_csv(series, os);
  }
  return series;
}

void write_csv(const TimeSeries& series, std::ostream& os) {
  os << "# fracjc-csv v1\n";
  os << "t,alpha,W,S_vn,norm,unitarity_residual,metric_residual,"
        "delta_unwrap_flag\n";
  for (const auto& r : series.rows) {
    std::string line;
    append_field(line, r.t);
    line += ',';
    append_field(line, r.alpha);
    line += ',';
    append_field(line, r.W);
    line += ',';
    append_field(line, r.S_vn);
    line += ',';
    append_field(line, r.norm);
    line += ',';
    append_field(line, r.unitarity_residual);
    line += ',';
    append_field(line, r.metric_residual);
    line += ',';
    line += std::to_string(r.delta_unwrap_flag);
    line += '\n';
    os << line;
  }
}

std::string to_csv(const TimeSeries& series) {
  std::ostringstream os;
  write_csv(series, os);
  return os.str();
}

}  // namespace fracjc::sim
