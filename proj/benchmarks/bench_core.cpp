// Microbenchmarks for the hot paths of the simulator: sampling, the
// constrained fits, the population solvers, and one full trial.

#include <benchmark/benchmark.h>

#include "nptx/adaptive.h"
#include "nptx/empirical.h"
#include "nptx/exponent.h"
#include "nptx/lowerbound.h"
#include "nptx/np_oracle.h"
#include "nptx/special.h"

namespace {

nptx::TransferScenario power_scenario() {
    nptx::TransferScenario sc;
    sc.id = "bench";
    sc.mu0.law = nptx::Gaussian{-1.0, 1.0};
    sc.mu1S.law = nptx::PowerLaw{2.0};
    sc.mu1T.law = nptx::Uniform{0.0, 1.0};
    sc.alpha = nptx::norm_cdf(2.0) - nptx::norm_cdf(1.0);
    sc.cls = nptx::make_threshold_class(-1.0, 1.0);
    sc.slack_r = 0.05;
    return sc;
}

void BM_SampleGaussian(benchmark::State& state) {
    const nptx::Distribution d{nptx::Gaussian{0.0, 1.0}};
    nptx::SplitRng rng(1, 0);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nptx::sample_real(d, rng, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGaussian)->Arg(1024)->Arg(65536);

void BM_ThresholdErm(benchmark::State& state) {
    const auto sc = power_scenario();
    nptx::SplitRng rng(7, 1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto s0 = nptx::sample_real(sc.mu0, rng, n);
    const auto s1 = nptx::sample_real(sc.mu1T, rng, n / 4);
    const nptx::ErmConfig cfg{sc.alpha, 0.05};
    for (auto _ : state)
        benchmark::DoNotOptimize(nptx::constrained_erm(sc.cls, s0, s1, cfg));
}
BENCHMARK(BM_ThresholdErm)->Arg(1024)->Arg(8192)->Arg(65536);

void BM_GaussianLevel(benchmark::State& state) {
    const nptx::NPProblem prob{nptx::Distribution{nptx::Gaussian{0.0, 1.0}},
                               nptx::Distribution{nptx::Gaussian{2.0, 1.0}}, 0.05};
    for (auto _ : state) benchmark::DoNotOptimize(nptx::np_solution(prob));
}
BENCHMARK(BM_GaussianLevel);

void BM_ExponentFit(benchmark::State& state) {
    const auto sc = power_scenario();
    for (auto _ : state)
        benchmark::DoNotOptimize(nptx::fit_exponent(sc, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExponentFit)->Arg(64)->Arg(256);

void BM_AdaptiveTrial(benchmark::State& state) {
    const auto sc = power_scenario();
    const nptx::AdaptiveConfig cfg;
    std::uint64_t rep = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            nptx::run_adaptive(sc, state.range(0), 512, 512, cfg, nptx::SplitRng(11, rep++)));
}
BENCHMARK(BM_AdaptiveTrial)->Arg(4096)->Arg(32768);

void BM_Packing(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            nptx::gv_packing(static_cast<int>(state.range(0)), nptx::SplitRng(3, 0)));
}
BENCHMARK(BM_Packing)->Arg(16)->Arg(32);

void BM_FamilyAudit(benchmark::State& state) {
    const auto fam = nptx::build_family(nptx::HardVariant::c1, 17, 0.25, 2.0, 1000000,
                                        1000000, 0.05, 0.0, nptx::SplitRng(5, 0));
    for (auto _ : state) benchmark::DoNotOptimize(nptx::verify_family(fam));
}
BENCHMARK(BM_FamilyAudit);

}  // namespace

BENCHMARK_MAIN();
