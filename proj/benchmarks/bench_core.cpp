#include "wpaoi/analysis.hpp"
#include "wpaoi/charging.hpp"
#include "wpaoi/queue_sim.hpp"
#include "wpaoi/rng.hpp"
#include "wpaoi/simulator.hpp"
#include "wpaoi/specfun.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace wpaoi;

static void BM_BesselK1Small(benchmark::State& state)
{
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_k1(x));
        x = x < 1.9 ? x + 1e-9 : 0.3;
    }
}
BENCHMARK(BM_BesselK1Small);

static void BM_BesselK1Quad(benchmark::State& state)
{
    double x = 2.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_k1(x));
        x = x < 40.0 ? x + 1e-9 : 2.5;
    }
}
BENCHMARK(BM_BesselK1Quad);

static void BM_RegularizedGammaQ(benchmark::State& state)
{
    const auto k = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(specfun::regularized_gamma_q(k, 0.7 * static_cast<double>(k)));
    state.SetComplexityN(k);
}
BENCHMARK(BM_RegularizedGammaQ)->RangeMultiplier(8)->Range(8, 4096)->Complexity();

static void BM_AfWaitMoments(benchmark::State& state)
{
    const double b = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const moment_pair m = af_wait_dist(b, 0.5 * b).moments();
        benchmark::DoNotOptimize(m);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AfWaitMoments)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

static void BM_ChargeSampler(benchmark::State& state)
{
    const charge_time_dist d(static_cast<double>(state.range(0)));
    rng_stream g(99);
    for (auto _ : state)
        benchmark::DoNotOptimize(d.sample(g));
}
BENCHMARK(BM_ChargeSampler)->Arg(1)->Arg(16)->Arg(256);

static void BM_ChargeSamplerFast(benchmark::State& state)
{
    const charge_time_dist d(static_cast<double>(state.range(0)));
    rng_stream g(99);
    for (auto _ : state)
        benchmark::DoNotOptimize(d.sample_fast(g));
}
BENCHMARK(BM_ChargeSamplerFast)->Arg(1)->Arg(16)->Arg(256);

static void BM_LindleyQueue(benchmark::State& state)
{
    for (auto _ : state) {
        const queue_sim_result r =
            simulate_geo_geo_queue(0.2, 0.5, static_cast<std::uint64_t>(state.range(0)), 7);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) / 5);
}
BENCHMARK(BM_LindleyQueue)->Arg(1'000'000);

static void BM_SlotSimulatorDf(benchmark::State& state)
{
    sim_config cfg;
    cfg.scheme = scheme_kind::df;
    cfg.params.b_s = cfg.params.b_r = 1000.0;
    cfg.params.d_rs = 6.0;
    cfg.params.d_dr = 4.0;
    cfg.params.d_ds = 10.0;
    cfg.params.gamma_th = std::pow(10.0, 1.6);
    cfg.params.c_p = 0.01;
    cfg.params.p_t = 2000.0;
    cfg.horizon_slots = static_cast<std::uint64_t>(state.range(0));
    cfg.replications = 1;
    cfg.workers = 1;
    cfg.seed = 5;
    for (auto _ : state) {
        const age_stats s = run(cfg);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SlotSimulatorDf)->Arg(200'000);

BENCHMARK_MAIN();
