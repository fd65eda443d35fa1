// OpenMP grid kernel vs the serial reference on the two expensive scans:
// the BLTP potential (one adaptive quadrature pair per point) and the
// variational energy (nested quadrature per trial scale).

#include <benchmark/benchmark.h>

#include "psring/grid.hpp"
#include "psring/models.hpp"
#include "psring/variational.hpp"

namespace {

using namespace psring;

const PotentialModel& bltp_model() {
  static const PotentialModel model{RingBLTP{{2.57e-5, 1.8e5}}, {}};
  return model;
}

double variational_energy(double a) {
  return energy_expectation(TrialScale(a), 2.661639e-5);
}

template <bool Parallel>
void BM_bltp_scan(benchmark::State& state) {
  const auto grid = make_grid(1e-7, 1e-3, static_cast<std::size_t>(state.range(0)), Spacing::log);
  const ScalarFunction f = [](double r) { return bltp_model()(r); };
  for (auto _ : state) {
    auto v = Parallel ? evaluate_on_grid(f, grid) : evaluate_on_grid_serial(f, grid);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_variational_scan(benchmark::State& state) {
  const auto grid = make_grid(1e-7, 1e4, static_cast<std::size_t>(state.range(0)), Spacing::log);
  const ScalarFunction f = variational_energy;
  for (auto _ : state) {
    auto v = Parallel ? evaluate_on_grid(f, grid) : evaluate_on_grid_serial(f, grid);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_bltp_scan<false>)->Name("bltp_scan/serial")->Arg(400)->Arg(4000)->UseRealTime();
BENCHMARK(BM_bltp_scan<true>)->Name("bltp_scan/openmp")->Arg(400)->Arg(4000)->UseRealTime();
BENCHMARK(BM_variational_scan<false>)->Name("variational_scan/serial")->Arg(220)->UseRealTime();
BENCHMARK(BM_variational_scan<true>)->Name("variational_scan/openmp")->Arg(220)->UseRealTime();

BENCHMARK_MAIN();
