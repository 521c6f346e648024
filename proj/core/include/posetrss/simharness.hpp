#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posetrss/designs.hpp"
#include "posetrss/models.hpp"

namespace posetrss {

enum class FlipPolicy
{
    None,
    Manual,
    Auto  //!< suggest_sign_flips on the ranking columns' correlation
};

struct SignFlipPolicy
{
    FlipPolicy kind = FlipPolicy::None;
    SignFlipMask mask;  //!< Manual only; over the ranking columns
};

//! One population model plus how its variables are used.
struct Scenario
{
    std::string label;
    PopulationModel model;
    std::vector<std::size_t> ranking_columns;  //!< empty = all variables
    std::vector<std::size_t> target_columns;   //!< empty = all variables
    std::optional<std::size_t> mvsr_column;    //!< default: first ranking column
    SignFlipPolicy flips;

    std::vector<std::size_t> ranking() const;
    std::vector<std::size_t> targets() const;
    std::size_t mvsr_ranking_column() const;
    // Mask actually used for poset designs under this scenario's policy.
    SignFlipMask resolve_flips() const;
};

struct GridCell
{
    std::size_t m = 0;
    std::size_t K = 0;
    std::size_t n = 0;

    friend bool operator==(GridCell const&, GridCell const&) = default;
};

struct SimulationPlan
{
    std::vector<Scenario> scenarios;
    std::vector<GridCell> grid;
    std::vector<DesignKind> designs{DesignKind::Mvsr, DesignKind::Cpor, DesignKind::Rpor};
    std::uint64_t iterations = 20000;
    std::uint64_t seed = 0;
    SamplerOptions sampler;
    std::uint64_t height_mc_draws = 4000;

    void validate() const;
};

//! Below this many iterations every row is flagged low precision.
inline constexpr std::uint64_t kLowPrecisionIterations = 100;

struct EfficiencyRow
{
    std::string scenario;
    std::size_t m = 0;
    std::size_t K = 0;
    std::size_t n = 0;
    DesignKind design = DesignKind::Mvsr;
    std::string variable;
    std::optional<double> efficiency;  //!< V(ybar) / MSE; absent if indeterminate
    double mc_mean = 0.0;
    double mc_mse = 0.0;
    double mc_variance = 0.0;  //!< divisor N, so mse = variance + bias^2
    double bias = 0.0;
    double true_mean = 0.0;
    double mc_se_mean = 0.0;   //!< sqrt(variance / N)
    double srs_variance = 0.0;
    double mean_var_hat = 0.0; //!< average variance estimate (NaN if none)
    std::string flag;
};

struct SkippedCell
{
    std::string scenario;
    GridCell cell;
    std::string reason;
};

struct EfficiencyTable
{
    std::vector<DesignKind> designs;
    std::vector<EfficiencyRow> rows;
    std::vector<SkippedCell> skipped;
    std::vector<std::string> notes;
    std::uint64_t iterations = 0;
};

//! Raw per-iteration estimates of one (scenario, cell).
struct CellSamples
{
    //! [design index][target index][iteration]
    std::vector<std::vector<std::vector<double>>> mu_hat;
    std::vector<std::vector<std::vector<double>>> var_hat;  //!< NaN when absent
    //! [target index][iteration]: SRS sample means of n * m iid draws
    std::vector<std::vector<double>> srs_mean;
    std::size_t cpor_exact_sets = 0;
    std::size_t cpor_mc_sets = 0;
};

struct RunOptions
{
    unsigned threads = 1;
};

/*!
 * Independent replications of generate -> build -> allocate -> draw ->
 * estimate for one cell. Replication t of cell (m, K, n) draws from substreams
 * of (seed, m, K, n, t) only, so scenarios sharing a cell see the same
 * uniforms, and results do not depend on the thread count.
 */
CellSamples simulate_cell(Scenario const& scenario, GridCell const& cell,
                          SimulationPlan const& plan, RunOptions const& options = {});

EfficiencyTable run_plan(SimulationPlan const& plan, RunOptions const& options = {});

// Reason a cell cannot run, or empty.
std::string infeasibility(GridCell const& cell);

}  // namespace posetrss
