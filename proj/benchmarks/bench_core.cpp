#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "kdgf/kdgf.hpp"

namespace {

std::vector<double> spread(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(1.7 * static_cast<double>(i)) * 1.2;
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(n);
    for (double& x : v) x -= m;
    return v;
}

void BM_Gradient(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto th = spread(n);
    const auto freqs = kdgf::NaturalFrequencies::zero(n);
    std::vector<double> out(n);
    for (auto _ : state) {
        kdgf::kuramoto_gradient_into(th, freqs, 1.0, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gradient)->RangeMultiplier(4)->Range(4, 1024)->Complexity(benchmark::oNSquared);

void BM_EulerStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const kdgf::PhaseConfig c(spread(n));
    const auto freqs = kdgf::NaturalFrequencies::zero(n);
    const kdgf::SimParams p{1.0, 0.01, 1, 1e-10};
    for (auto _ : state) benchmark::DoNotOptimize(kdgf::euler_step(c, freqs, p));
}
BENCHMARK(BM_EulerStep)->Arg(8)->Arg(64)->Arg(256);

void BM_Simulate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const kdgf::PhaseConfig c(spread(n));
    const auto freqs = kdgf::NaturalFrequencies::zero(n);
    const kdgf::SimParams p{1.0, 0.01, 10'000, 1e-300};
    for (auto _ : state)
        benchmark::DoNotOptimize(kdgf::simulate(c, freqs, p, kdgf::StoppingRule::max_steps_only()));
    state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_Simulate)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
