#include <benchmark/benchmark.h>

#include "capture/cone_spectra.hpp"
#include "capture/hyperfun.hpp"
#include "capture/pursuit_mc.hpp"
#include "capture/sinc_galerkin.hpp"

namespace {

void BM_Gauss2F1(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0)) / 100.0;
    const capture::HyperParams p{2.3, -1.7, 2.5, z};
    for (auto _ : state) benchmark::DoNotOptimize(capture::gauss_2f1(p));
}
BENCHMARK(BM_Gauss2F1)->Arg(10)->Arg(50)->Arg(90)->Arg(99);

void BM_TruncatedConeEigen(benchmark::State& state) {
    const capture::ConeSpec spec{3, 5.102, capture::vertex_angle_delta(3)};
    for (auto _ : state) benchmark::DoNotOptimize(capture::truncated_cone_eigen(spec).mu);
}
BENCHMARK(BM_TruncatedConeEigen);

void BM_HatTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(capture::hat_t_table(6));
}
BENCHMARK(BM_HatTable)->Unit(benchmark::kMillisecond);

void BM_SincAssembly(benchmark::State& state) {
    const auto disc = capture::sinc::SincDiscretization::make(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(capture::sinc::assemble_matrix(disc).sum());
    state.SetLabel("dim " + std::to_string(disc.dim));
}
BENCHMARK(BM_SincAssembly)->Arg(1)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_PursuitPaths(benchmark::State& state) {
    capture::mc::PursuitConfig cfg;
    cfg.predators = static_cast<int>(state.range(0));
    cfg.paths = 1000;
    cfg.t_max = 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(capture::mc::simulate(cfg).censored);
    state.SetItemsProcessed(state.iterations() * cfg.paths);
}
BENCHMARK(BM_PursuitPaths)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
