#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "fracjc/errors.hpp"
#include "fracjc/mlf.hpp"
#include "fracjc/simulation.hpp"

namespace {

using json = nlohmann::json;

void apply_config_file(const std::string& path, fracjc::sim::RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw fracjc::ValidationError("cannot open config file: " + path);
  json j = json::parse(is);
  if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<double>>();
  if (j.contains("beta_re")) cfg.beta_re = j["beta_re"];
  if (j.contains("beta_im")) cfg.beta_im = j["beta_im"];
  if (j.contains("mu")) cfg.mu = j["mu"];
  if (j.contains("t_max")) cfg.t_max = j["t_max"];
  if (j.contains("steps")) cfg.steps = j["steps"];
  if (j.contains("n_max")) cfg.n_max = j["n_max"];
  if (j.contains("tail_tol")) cfg.tail_tol = j["tail_tol"];
  if (j.contains("ml_tol")) cfg.ml_tol = j["ml_tol"];
  if (j.contains("kappa0")) cfg.kappa0 = j["kappa0"];
  if (j.contains("lambda0_re")) cfg.lambda0_re = j["lambda0_re"];
  if (j.contains("lambda0_im")) cfg.lambda0_im = j["lambda0_im"];
  if (j.contains("Lambda0")) cfg.Lambda0 = j["Lambda0"];
  if (j.contains("observables"))
    cfg.observables = std::set<std::string>(
        j["observables"].begin(), j["observables"].end());
  if (j.contains("out")) cfg.output_path = j["out"];
}

// Flags shared by `simulate` and `validate`; flags override config values.
void add_run_options(CLI::App* cmd, fracjc::sim::RunConfig& cfg,
                     std::string& n_max_str, std::string& lambda0_str,
                     std::vector<double>& alphas,
                     std::vector<std::string>& observables) {
  cmd->add_option("--alpha", alphas, "fractional orders, comma separated")
      ->delimiter(',');
  cmd->add_option("--beta-re", cfg.beta_re, "coherent amplitude, real part");
  cmd->add_option("--beta-im", cfg.beta_im, "coherent amplitude, imag part");
  cmd->add_option("--mu", cfg.mu, "atom-field coupling");
  cmd->add_option("--t-max", cfg.t_max, "end of the time grid");
  cmd->add_option("--steps", cfg.steps, "grid points including t=0");
  cmd->add_option("--n-max", n_max_str, "photon cutoff or 'auto'");
  cmd->add_option("--tail-tol", cfg.tail_tol, "coherent tail bound");
  cmd->add_option("--ml-tol", cfg.ml_tol, "Mittag-Leffler tolerance");
  cmd->add_option("--kappa0", cfg.kappa0, "initial Dyson kappa");
  cmd->add_option("--lambda0", lambda0_str, "initial Dyson lambda as re,im");
  cmd->add_option("--Lambda0", cfg.Lambda0, "initial Dyson Lambda (> 0)");
  cmd->add_option("--observables", observables,
                  "subset of inversion,entropy,amplitudes,diagnostics")
      ->delimiter(',');
  cmd->add_option("--out", cfg.output_path, "CSV output path");
}

void finalize_run_config(fracjc::sim::RunConfig& cfg,
                         const std::string& n_max_str,
                         const std::string& lambda0_str,
                         const std::vector<double>& alphas,
                         const std::vector<std::string>& observables) {
  if (!alphas.empty()) cfg.alphas = alphas;
  if (!observables.empty())
    cfg.observables =
        std::set<std::string>(observables.begin(), observables.end());
  if (!n_max_str.empty()) {
    if (n_max_str == "auto")
      cfg.n_max = -1;
    else
      cfg.n_max = std::stoi(n_max_str);
  }
  if (!lambda0_str.empty()) {
    double re = 0, im = 0;
    if (std::sscanf(lambda0_str.c_str(), "%lf,%lf", &re, &im) < 1)
      throw fracjc::ValidationError("--lambda0 expects re,im");
    cfg.lambda0_re = re;
    cfg.lambda0_im = im;
  }
}

int report_error(const fracjc::Error& e) {
  json rec{{"error", fracjc::error_kind(e)}, {"message", e.what()}};
  if (const auto* re = dynamic_cast<const fracjc::RunError*>(&e)) {
    rec["error"] = re->kind;
    rec["alpha"] = re->alpha;
    rec["n"] = re->n;
    rec["t"] = re->t;
  }
  std::cerr << rec.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional-time Jaynes-Cummings simulator"};
  app.require_subcommand(1);

  fracjc::sim::RunConfig cfg;
  std::string config_path, n_max_str, lambda0_str;
  std::vector<double> alphas;
  std::vector<std::string> observables;

  auto* sim = app.add_subcommand(
      "simulate", "alpha sweep over a uniform time grid, CSV output");
  sim->add_option("--config", config_path, "JSON config file");
  add_run_options(sim, cfg, n_max_str, lambda0_str, alphas, observables);

  auto* val = app.add_subcommand(
      "validate", "report config findings without running");
  val->add_option("--config", config_path, "JSON config file");
  add_run_options(val, cfg, n_max_str, lambda0_str, alphas, observables);

  // debugging helper, hidden from help
  auto* mlf_cmd = app.add_subcommand("mlf", "")->group("");
  auto* eval = mlf_cmd->add_subcommand("eval", "");
  double ml_alpha = 0.5, ml_re = 0.0, ml_im = 0.0, ml_tol = 1e-12;
  eval->add_option("--alpha", ml_alpha)->required();
  eval->add_option("--re", ml_re)->required();
  eval->add_option("--im", ml_im);
  eval->add_option("--tol", ml_tol);

  // Load the config file (if any) before CLI flags so flags win.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
  } catch (const fracjc::Error& e) {
    return report_error(e);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      auto r = fracjc::mlf::mittag_leffler(ml_alpha, {ml_re, ml_im}, ml_tol);
      const char* method = r.method == fracjc::mlf::Method::Series
                               ? "series"
                               : "contour";
      std::printf("E_%.17g(%.17g%+.17gi) = %.17g %+.17gi  (%s, est %.3g)\n",
                  ml_alpha, ml_re, ml_im, r.value.real(), r.value.imag(),
                  method, r.est_error);
      return 0;
    }
    finalize_run_config(cfg, n_max_str, lambda0_str, alphas, observables);
    if (*val) {
      auto findings = fracjc::sim::validate(cfg);
      for (const auto& f : findings) std::cout << f << "\n";
      return findings.empty() ? 0 : 1;
    }
    if (*sim) {
      fracjc::sim::run(cfg);
      return 0;
    }
  } catch (const fracjc::Error& e) {
    return report_error(e);
  }
  return 0;
}
