#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "posetrss/linext.hpp"
#include "posetrss/poset.hpp"
#include "posetrss/rng.hpp"

namespace posetrss {

enum class DesignKind
{
    Mvsr,  //!< rank on one leading variable, others ride along
    Cpor,  //!< stratum = rounded mean height over all extensions
    Rpor,  //!< stratum = height in one uniformly drawn extension
    Srs    //!< simple random sampling baseline (reports only)
};

std::string_view to_string(DesignKind kind);
std::optional<DesignKind> parse_design_kind(std::string_view text);

//! One element placed in a stratum, with provenance.
struct RankedRecord
{
    ElementVector ranking_values;
    ElementVector target_values;
    std::size_t set_index = 0;  //!< 1..K
    std::size_t element = 0;    //!< index of the element inside its set
    std::size_t stratum = 0;    //!< 1..m
    std::optional<double> mean_height;  //!< CPOR only
};

//! Records grouped by stratum: strata[h - 1] holds stratum h.
using StratumLists = std::vector<std::vector<RankedRecord>>;

struct DesignConfig
{
    std::size_t m = 0;
    std::size_t K = 0;
    std::size_t n = 0;  //!< per stratum (MVSR/RPOR); CPOR budget is n * m
    DesignKind kind = DesignKind::Rpor;
    std::vector<std::size_t> ranking_columns;
    std::vector<std::size_t> target_columns;
    SignFlipMask sign_flips;  //!< over ranking_columns; empty = no flips
    std::uint64_t seed = 0;
    SamplerOptions sampler;
    //! CPOR falls back to Monte Carlo heights with this many draws when a
    //! set has more than sampler.exact_cutoff extensions.
    std::uint64_t height_mc_draws = 4000;

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
    // Everything except the sample size; enough to build a population.
    void validate_structure() const;
    SignFlipMask effective_flips() const;
};

class StratifiedPopulation
{
  public:
    StratifiedPopulation(DesignKind kind, std::size_t K, StratumLists strata);

    DesignKind kind() const { return kind_; }
    std::size_t K() const { return K_; }
    std::size_t m() const { return strata_.size(); }
    StratumLists const& strata() const { return strata_; }
    std::vector<RankedRecord> const& stratum(std::size_t h) const
    {
        return strata_[h - 1];
    }
    std::vector<std::size_t> stratum_sizes() const;

    // CPOR bookkeeping: how many sets used exact vs Monte Carlo heights.
    std::size_t exact_height_sets = 0;
    std::size_t mc_height_sets = 0;

  private:
    DesignKind kind_;
    std::size_t K_;
    StratumLists strata_;
};

struct Allocation
{
    std::vector<std::size_t> n_h;

    std::size_t total() const;
};

/*!
 * Sort each set by its single ranking column; the h-th order statistic goes to
 * stratum h with its full target vector. Ties are ordered uniformly at random
 * from stream.split(set_index).
 */
StratifiedPopulation build_mvsr(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream);

// Mean heights of one set's poset over the ranking columns (after flips):
// exact when the extension count is within the cutoff, else Monte Carlo.
HeightSummary set_heights(ElementSet const& set, DesignConfig const& cfg,
                          CounterRng const& set_stream);

// Each element goes to the stratum given by its rounded mean height.
StratifiedPopulation build_cpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                std::span<const HeightSummary> heights);

// Computes heights per set from stream.split(set_index), then build_cpor.
StratifiedPopulation build_cpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream);

/*!
 * One uniformly drawn linear extension per set (from stream.split(set_index));
 * the element at height h goes to stratum h.
 */
StratifiedPopulation build_rpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream);

StratifiedPopulation build_population(std::span<const ElementSet> sets,
                                      DesignConfig const& cfg,
                                      CounterRng const& stream);

/*!
 * Largest-remainder apportionment of total proportional to the stratum
 * sizes, then every non-empty stratum gets at least one unit (taken from the
 * stratum furthest above its quota) and no stratum exceeds its size.
 */
Allocation allocate_proportional(std::span<const std::size_t> stratum_sizes,
                                 std::size_t total);

// n per stratum for MVSR/RPOR; proportional n * m for CPOR.
Allocation allocate(StratifiedPopulation const& pop, std::size_t n);

// Simple random sample without replacement (partial Fisher-Yates).
std::vector<RankedRecord> draw_srswor(std::span<const RankedRecord> stratum,
                                      std::size_t n_h, CounterRng& rng);

// SRSWOR in every stratum, stratum h drawing from stream.split(h).
StratumLists draw_stratified_sample(StratifiedPopulation const& pop,
                                    Allocation const& alloc,
                                    CounterRng const& stream);

}  // namespace posetrss
