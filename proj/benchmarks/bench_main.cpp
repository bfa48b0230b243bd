#include <benchmark/benchmark.h>

#include "psram/roofline.hpp"
#include "psram/workloads/catalog.hpp"
#include "psram/workloads/mttkrp.hpp"
#include "psram/workloads/sod.hpp"
#include "psram/workloads/vlasov.hpp"

using namespace psram;

static void BM_Evaluate(benchmark::State& state) {
    const auto cfg = default_system();
    const WorkloadProfile wl{"w", 1e9, 1e9};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(cfg, wl));
}
BENCHMARK(BM_Evaluate);

static void BM_SweepBandwidth(benchmark::State& state) {
    std::vector<double> axis;
    for (int i = 1; i <= state.range(0); ++i) axis.push_back(i * 1e11);
    const auto src = workload_source("sst");
    for (auto _ : state) benchmark::DoNotOptimize(sweep(SweepParameter::Bandwidth, axis, default_system(), src));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepBandwidth)->Arg(20)->Arg(1000);

static void BM_SstStep(benchmark::State& state) {
    const auto cfg = sod_canonical(static_cast<std::size_t>(state.range(0)), 1);
    const auto init = sod_initial_state(cfg);
    const auto progs = sst_build_program(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(sst_stream_step(init, cfg, progs, {32, 8, {}}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SstStep)->Arg(100)->Arg(10000);

static void BM_SstOracleStep(benchmark::State& state) {
    const auto cfg = sod_canonical(static_cast<std::size_t>(state.range(0)), 1);
    const auto init = sod_initial_state(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(sst_oracle_step(init, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SstOracleStep)->Arg(100)->Arg(10000);

static void BM_MttkrpExecute(benchmark::State& state) {
    const auto x = random_tensor({64, 64, 64}, 0.01, 1);
    const auto b = random_factor(64, 16, 2);
    const auto c = random_factor(64, 16, 3);
    const auto job = mttkrp_build_program(x, b, c, 16);
    for (auto _ : state) benchmark::DoNotOptimize(execute(job.program, {32, 8, {}}, job.streams));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.nnz()));
}
BENCHMARK(BM_MttkrpExecute);

static void BM_VlasovExecute(benchmark::State& state) {
    const auto spec = random_spectral(static_cast<std::size_t>(state.range(0)), 1);
    const MeshConfig mesh{32, 8, state.range(1) ? Quantization::fixed(4) : Quantization::real()};
    for (auto _ : state) benchmark::DoNotOptimize(vlasov_stream_run(spec, mesh));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VlasovExecute)->Args({4096, 0})->Args({4096, 1});

BENCHMARK_MAIN();
