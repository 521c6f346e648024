#include "posetrss/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "posetrss/estimators.hpp"

namespace posetrss {
namespace {

// Substream tags.
constexpr std::uint64_t kGenerateTag = 1;
constexpr std::uint64_t kSrsTag = 2;
constexpr std::uint64_t kDesignTag = 3;
constexpr std::uint64_t kBuildTag = 1;
constexpr std::uint64_t kDrawTag = 2;

std::vector<std::size_t> all_columns(std::size_t r)
{
    std::vector<std::size_t> out(r);
    for (std::size_t j = 0; j < r; ++j)
        out[j] = j;
    return out;
}

SquareMatrix restrict(SquareMatrix const& full, std::vector<std::size_t> const& cols)
{
    SquareMatrix out(cols.size());
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            out(a, b) = full(cols[a], cols[b]);
    return out;
}

struct MomentSummary
{
    double mean = 0.0;
    double variance = 0.0;  // divisor N
    double mse = 0.0;
};

MomentSummary moments(std::vector<double> const& xs, double truth)
{
    MomentSummary s;
    auto const n = static_cast<double>(xs.size());
    for (double x : xs)
        s.mean += x;
    s.mean /= n;
    for (double x : xs)
    {
        s.variance += (x - s.mean) * (x - s.mean);
        s.mse += (x - truth) * (x - truth);
    }
    s.variance /= n;
    s.mse /= n;
    return s;
}

template<class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2)
    {
        for (std::uint64_t t = 0; t < count; ++t)
            body(t);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    std::uint64_t const chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w)
    {
        std::uint64_t const begin = w * chunk;
        std::uint64_t const end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back([&, begin, end] {
            try
            {
                for (std::uint64_t t = begin; t < end; ++t)
                    body(t);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
        w.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::string describe_mask(SignFlipMask const& mask, std::vector<std::string> const& names,
                          std::vector<std::size_t> const& ranking)
{
    std::string out;
    for (std::size_t k = 0; k < mask.size(); ++k)
    {
        if (!mask.flipped(k))
            continue;
        if (!out.empty())
            out += ",";
        out += names[ranking[k]];
    }
    return out.empty() ? "none" : out;
}

}  // namespace

//---------------------------------------------------------------------------//
// Scenario / plan
//---------------------------------------------------------------------------//

std::vector<std::size_t> Scenario::ranking() const
{
    return ranking_columns.empty() ? all_columns(model.dimension()) : ranking_columns;
}

std::vector<std::size_t> Scenario::targets() const
{
    return target_columns.empty() ? all_columns(model.dimension()) : target_columns;
}

std::size_t Scenario::mvsr_ranking_column() const
{
    return mvsr_column.value_or(ranking().front());
}

SignFlipMask Scenario::resolve_flips() const
{
    auto const cols = ranking();
    switch (flips.kind)
    {
        case FlipPolicy::None: return SignFlipMask(cols.size());
        case FlipPolicy::Manual:
            if (flips.mask.size() != cols.size())
                throw std::invalid_argument("scenario '" + label
                                            + "': manual flip mask must cover the "
                                              "ranking columns");
            return flips.mask;
        case FlipPolicy::Auto:
            if (!model.correlation())
                throw std::invalid_argument("scenario '" + label
                                            + "': automatic flips need a "
                                              "non-degenerate correlation matrix");
            return suggest_sign_flips(restrict(*model.correlation(), cols));
    }
    return SignFlipMask(cols.size());
}

void SimulationPlan::validate() const
{
    if (scenarios.empty())
        throw std::invalid_argument("plan: no scenarios");
    if (grid.empty())
        throw std::invalid_argument("plan: empty design grid");
    if (designs.empty())
        throw std::invalid_argument("plan: no designs");
    if (iterations < 1)
        throw std::invalid_argument("plan: iterations must be >= 1");
    for (auto d : designs)
    {
        if (d == DesignKind::Srs)
            throw std::invalid_argument("plan: SRS is the baseline, not a design");
    }
    for (auto const& s : scenarios)
    {
        std::size_t const r = s.model.dimension();
        for (auto c : s.ranking())
            if (c >= r)
                throw std::invalid_argument("scenario '" + s.label
                                            + "': ranking column out of range");
        for (auto c : s.targets())
            if (c >= r)
                throw std::invalid_argument("scenario '" + s.label
                                            + "': target column out of range");
        if (s.mvsr_ranking_column() >= r)
            throw std::invalid_argument("scenario '" + s.label
                                        + "': MVSR column out of range");
        (void)s.resolve_flips();
    }
}

std::string infeasibility(GridCell const& cell)
{
    if (cell.m < 2)
        return "m must be >= 2";
    if (cell.n < 1)
        return "n must be >= 1";
    if (cell.n >= cell.K)
        return "n must be < K";
    return {};
}

//---------------------------------------------------------------------------//
// Simulation
//---------------------------------------------------------------------------//

CellSamples simulate_cell(Scenario const& scenario, GridCell const& cell,
                          SimulationPlan const& plan, RunOptions const& options)
{
    if (auto why = infeasibility(cell); !why.empty())
        throw std::invalid_argument("simulate_cell: " + why);

    auto const targets = scenario.targets();
    SignFlipMask const flips = scenario.resolve_flips();
    std::size_t const nd = plan.designs.size();
    std::size_t const nt = targets.size();
    auto const iters = static_cast<std::size_t>(plan.iterations);

    std::vector<DesignConfig> configs;
    for (auto kind : plan.designs)
    {
        DesignConfig cfg;
        cfg.m = cell.m;
        cfg.K = cell.K;
        cfg.n = cell.n;
        cfg.kind = kind;
        cfg.target_columns = targets;
        cfg.sampler = plan.sampler;
        cfg.height_mc_draws = plan.height_mc_draws;
        cfg.seed = plan.seed;
        if (kind == DesignKind::Mvsr)
        {
            cfg.ranking_columns = {scenario.mvsr_ranking_column()};
        }
        else
        {
            cfg.ranking_columns = scenario.ranking();
            cfg.sign_flips = flips;
        }
        cfg.validate();
        configs.push_back(std::move(cfg));
    }

    CellSamples out;
    out.mu_hat.assign(nd, std::vector<std::vector<double>>(nt, std::vector<double>(iters)));
    out.var_hat = out.mu_hat;
    out.srs_mean.assign(nt, std::vector<double>(iters));
    std::vector<std::size_t> cpor_exact(iters, 0);
    std::vector<std::size_t> cpor_mc(iters, 0);

    CounterRng const root(plan.seed);
    parallel_for(plan.iterations, options.threads, [&](std::uint64_t t) {
        CounterRng gen = root.split({kGenerateTag, cell.m, cell.K, cell.n, t});
        auto const sets = generate_sets(scenario.model, cell.m, cell.K, gen);

        CounterRng srs = root.split({kSrsTag, cell.m, cell.K, cell.n, t});
        std::vector<double> sums(nt, 0.0);
        std::size_t const budget = cell.n * cell.m;
        for (std::size_t k = 0; k < budget; ++k)
        {
            auto const x = scenario.model.draw(srs);
            for (std::size_t v = 0; v < nt; ++v)
                sums[v] += x[targets[v]];
        }
        for (std::size_t v = 0; v < nt; ++v)
            out.srs_mean[v][t] = sums[v] / static_cast<double>(budget);

        for (std::size_t d = 0; d < nd; ++d)
        {
            auto const& cfg = configs[d];
            CounterRng const stream = root.split(
                {kDesignTag, static_cast<std::uint64_t>(cfg.kind), cell.m, cell.K, cell.n, t});
            auto const pop = build_population(sets, cfg, stream.split(kBuildTag));
            auto const alloc = allocate(pop, cell.n);
            auto const sample = draw_stratified_sample(pop, alloc, stream.split(kDrawTag));
            auto const report = estimate(pop, sample, alloc);
            for (std::size_t v = 0; v < nt; ++v)
            {
                out.mu_hat[d][v][t] = report.variables[v].mu_hat;
                out.var_hat[d][v][t] = report.variables[v].var_hat.value_or(
                    std::numeric_limits<double>::quiet_NaN());
            }
            if (cfg.kind == DesignKind::Cpor)
            {
                cpor_exact[t] = pop.exact_height_sets;
                cpor_mc[t] = pop.mc_height_sets;
            }
        }
    });
    for (std::size_t t = 0; t < iters; ++t)
    {
        out.cpor_exact_sets += cpor_exact[t];
        out.cpor_mc_sets += cpor_mc[t];
    }
    return out;
}

EfficiencyTable run_plan(SimulationPlan const& plan, RunOptions const& options)
{
    plan.validate();
    EfficiencyTable table;
    table.designs = plan.designs;
    table.iterations = plan.iterations;
    bool const low_precision = plan.iterations < kLowPrecisionIterations;
    if (low_precision)
    {
        table.notes.push_back("only " + std::to_string(plan.iterations)
                              + " iteration(s): rows flagged low_precision");
    }

    for (auto const& s : plan.scenarios)
    {
        auto const flips = s.resolve_flips();
        auto const& names = s.model.variable_names();
        std::string note = "scenario '" + s.label + "': poset designs rank on "
                           + std::to_string(s.ranking().size())
                           + " column(s) with sign flips: "
                           + describe_mask(flips, names, s.ranking());
        if (std::find(plan.designs.begin(), plan.designs.end(), DesignKind::Mvsr)
            != plan.designs.end())
        {
            note += "; MVSR ranks on the original column '"
                    + names[s.mvsr_ranking_column()] + "'";
        }
        table.notes.push_back(note);
    }

    for (auto const& cell : plan.grid)
    {
        for (auto const& scenario : plan.scenarios)
        {
            if (auto why = infeasibility(cell); !why.empty())
            {
                table.skipped.push_back({scenario.label, cell, why});
                continue;
            }
            auto const samples = simulate_cell(scenario, cell, plan, options);
            auto const targets = scenario.targets();
            auto const& names = scenario.model.variable_names();

            if (samples.cpor_mc_sets > 0)
            {
                table.notes.push_back(
                    "scenario '" + scenario.label + "' m=" + std::to_string(cell.m)
                    + " K=" + std::to_string(cell.K) + " n=" + std::to_string(cell.n)
                    + ": CPOR heights exact for " + std::to_string(samples.cpor_exact_sets)
                    + " sets, Monte Carlo for " + std::to_string(samples.cpor_mc_sets));
            }

            std::vector<double> srs_var(targets.size());
            for (std::size_t v = 0; v < targets.size(); ++v)
            {
                double const truth = scenario.model.means()[targets[v]];
                srs_var[v] = moments(samples.srs_mean[v], truth).variance;
                if (!scenario.model.is_empirical())
                {
                    double const analytic = scenario.model.variances()[targets[v]]
                                            / static_cast<double>(cell.n * cell.m);
                    std::ostringstream os;
                    os.precision(6);
                    os << "scenario '" << scenario.label << "' m=" << cell.m
                       << " K=" << cell.K << " n=" << cell.n << " "
                       << names[targets[v]] << ": SRS variance MC " << srs_var[v]
                       << " vs analytic " << analytic;
                    table.notes.push_back(os.str());
                }
            }

            for (std::size_t d = 0; d < plan.designs.size(); ++d)
            {
                for (std::size_t v = 0; v < targets.size(); ++v)
                {
                    double const truth = scenario.model.means()[targets[v]];
                    auto const mom = moments(samples.mu_hat[d][v], truth);
                    EfficiencyRow row;
                    row.scenario = scenario.label;
                    row.m = cell.m;
                    row.K = cell.K;
                    row.n = cell.n;
                    row.design = plan.designs[d];
                    row.variable = names[targets[v]];
                    row.mc_mean = mom.mean;
                    row.mc_mse = mom.mse;
                    row.mc_variance = mom.variance;
                    row.bias = mom.mean - truth;
                    row.true_mean = truth;
                    row.mc_se_mean = std::sqrt(mom.variance / static_cast<double>(plan.iterations));
                    row.srs_variance = srs_var[v];

                    double vh_sum = 0.0;
                    std::size_t vh_count = 0;
                    for (double x : samples.var_hat[d][v])
                    {
                        if (!std::isnan(x))
                        {
                            vh_sum += x;
                            ++vh_count;
                        }
                    }
                    row.mean_var_hat = vh_count > 0
                                           ? vh_sum / static_cast<double>(vh_count)
                                           : std::numeric_limits<double>::quiet_NaN();

                    std::vector<std::string> flags;
                    if (low_precision)
                        flags.emplace_back("low_precision");
                    if (mom.mse > 0.0 && srs_var[v] > 0.0)
                        row.efficiency = srs_var[v] / mom.mse;
                    else
                        flags.emplace_back("indeterminate");
                    for (std::size_t k = 0; k < flags.size(); ++k)
                        row.flag += (k ? ";" : "") + flags[k];
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }
    return table;
}

}  // namespace posetrss
