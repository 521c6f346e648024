#include <benchmark/benchmark.h>

#include "posetrss/simharness.hpp"

using namespace posetrss;

namespace {

// One replication of the whole pipeline per iteration, per design.
void BM_SimulateCell(benchmark::State& state)
{
    SimulationPlan plan;
    plan.scenarios.push_back(Scenario{"bench", PopulationModel(BivariateNormal{0, 0, 1, 1, 0.5}),
                                      {}, {}, std::nullopt, {}});
    plan.grid = {{3, 12, 4}};
    plan.designs = {static_cast<DesignKind>(state.range(0))};
    plan.iterations = 100;
    plan.seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_cell(plan.scenarios[0], plan.grid[0], plan));
    state.SetItemsProcessed(state.iterations() * 100);
    state.SetLabel(std::string(to_string(plan.designs[0])));
}
BENCHMARK(BM_SimulateCell)
    ->Arg(static_cast<int>(DesignKind::Mvsr))
    ->Arg(static_cast<int>(DesignKind::Cpor))
    ->Arg(static_cast<int>(DesignKind::Rpor));

}  // namespace
