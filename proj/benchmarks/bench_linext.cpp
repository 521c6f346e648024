#include <random>

#include <benchmark/benchmark.h>

#include "posetrss/linext.hpp"

using namespace posetrss;

namespace {

// Sets of m random bivariate points; dominance decides the order.
Poset random_dominance_poset(std::size_t m, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<ElementVector> rows(m);
    for (auto& r : rows)
        r = {z(gen), z(gen)};
    return build_poset(ElementSet(std::move(rows)));
}

void BM_CountExtensions(benchmark::State& state)
{
    auto const p = random_dominance_poset(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_extensions(p));
}
BENCHMARK(BM_CountExtensions)->Arg(5)->Arg(10)->Arg(20)->Arg(30);

void BM_ExactMeanHeights(benchmark::State& state)
{
    auto const p = random_dominance_poset(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(mean_heights(p, ExactHeights{}));
}
BENCHMARK(BM_ExactMeanHeights)->Arg(5)->Arg(10)->Arg(20);

void BM_ExactSamplerDraw(benchmark::State& state)
{
    ExtensionSampler sampler(random_dominance_poset(static_cast<std::size_t>(state.range(0)), 3));
    CounterRng rng(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_ExactSamplerDraw)->Arg(5)->Arg(20);

void BM_McmcSamplerDraw(benchmark::State& state)
{
    SamplerOptions opt;
    opt.force_mcmc = true;
    ExtensionSampler sampler(random_dominance_poset(static_cast<std::size_t>(state.range(0)), 5), opt);
    CounterRng rng(6);
    for (auto _ : state)
        benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_McmcSamplerDraw)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
