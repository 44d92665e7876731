#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>

#include "fracjc/dynamics.hpp"
#include "fracjc/mlf.hpp"
#include "fracjc/observables.hpp"
#include "fracjc/unitarization.hpp"

using cplx = std::complex<double>;
namespace mlf = fracjc::mlf;
namespace dyson = fracjc::dyson;
namespace dynamics = fracjc::dynamics;
namespace obs = fracjc::obs;

static void BM_MlSeries(benchmark::State& state) {
  const cplx z = 2.0 * std::polar(1.0, -std::numbers::pi / 4.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mlf::ml_series(0.5, z).value);
}
BENCHMARK(BM_MlSeries);

static void BM_MlContour(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const cplx z = r * std::polar(1.0, -std::numbers::pi / 4.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mlf::ml_contour(0.5, z).value);
}
BENCHMARK(BM_MlContour)->Arg(15)->Arg(30);

static void BM_UnitaryBlock(benchmark::State& state) {
  const fracjc::jc::FractionalConfig cfg{0.75, 1.0};
  const auto p0 = dyson::DysonParams::identity();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dyson::unitary_block(cfg, fracjc::jc::BlockIndex{8}, 17.0, p0));
}
BENCHMARK(BM_UnitaryBlock);

static void BM_EvolveAndObserve(benchmark::State& state) {
  const cplx beta{2.0, 0.0};
  const int n_max = dynamics::auto_n_max(beta, 1e-12);
  const auto s0 = dynamics::initial_state({beta, n_max, 1e-12});
  const fracjc::jc::FractionalConfig cfg{0.5, 1.0};
  const auto p0 = dyson::DysonParams::identity();
  for (auto _ : state) {
    const auto st = dynamics::evolve(s0, cfg, 12.5, p0);
    benchmark::DoNotOptimize(
        obs::von_neumann_entropy_qubit(obs::reduced_atom_density(st)));
  }
}
BENCHMARK(BM_EvolveAndObserve);

BENCHMARK_MAIN();
