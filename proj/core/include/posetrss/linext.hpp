#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "posetrss/poset.hpp"
#include "posetrss/rng.hpp"

namespace posetrss {

//! Ground-set limit for the bitmask algorithms below.
inline constexpr std::size_t kMaxBitmaskElements = 64;

class PosetTooLarge : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class CountOverflow : public std::overflow_error
{
  public:
    using std::overflow_error::overflow_error;
};

//---------------------------------------------------------------------------//
/*!
 * \brief Order-preserving total order of a poset's elements.
 *
 * order[0] is the bottom element (height 1).
 */
struct LinearExtension
{
    std::vector<std::size_t> order;

    // heights()[e] is the 1-based height of element e.
    std::vector<std::size_t> heights() const;

    friend bool operator==(LinearExtension const&, LinearExtension const&) = default;
    friend auto operator<=>(LinearExtension const&, LinearExtension const&) = default;
};

bool is_linear_extension(Poset const& p, LinearExtension const& le);

struct CapExceeded
{
    std::uint64_t cap;
};

/*!
 * All linear extensions, by backtracking over the currently minimal elements
 * in index order. Returns CapExceeded (and no partial list) when there are
 * more than cap extensions.
 */
std::variant<std::vector<LinearExtension>, CapExceeded>
enumerate_extensions(Poset const& p, std::uint64_t cap);

//---------------------------------------------------------------------------//
/*!
 * \brief Lattice of down-sets (order ideals) with extension counts.
 *
 * For every ideal D we keep the number of linear extensions of D (ways to
 * build it from the bottom) and of its complement (ways to finish from it).
 * An element x that is minimal outside D sits at height |D| + 1 in exactly
 * below(D) * above(D + x) extensions, which gives exact mean heights and
 * exact uniform sampling without listing the extensions.
 */
class IdealLattice
{
  public:
    static constexpr std::size_t kDefaultMaxIdeals = std::size_t{1} << 22;

    explicit IdealLattice(Poset const& p,
                          std::size_t max_ideals = kDefaultMaxIdeals);

    std::size_t element_count() const { return m_; }
    std::size_t ideal_count() const { return ideals_.size(); }
    std::uint64_t extension_count() const { return above_.front(); }

    // Mean 1-based height of each element over all extensions.
    std::vector<double> mean_heights() const;
    // The index-th extension in backtracking order, index < extension_count().
    LinearExtension unrank(std::uint64_t index) const;

  private:
    std::size_t index_of(std::uint64_t mask) const;
    bool addable(std::uint64_t ideal, std::size_t x) const
    {
        return !(ideal >> x & 1u) && (predecessors_[x] & ~ideal) == 0;
    }

    std::size_t m_;
    std::uint64_t full_;
    std::vector<std::uint64_t> predecessors_;
    std::vector<std::uint64_t> ideals_;  // grouped by size, smallest first
    std::vector<std::uint64_t> below_;
    std::vector<std::uint64_t> above_;
    std::vector<std::uint32_t> dense_index_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_index_;
};

// Exact number of linear extensions. Throws PosetTooLarge beyond the bitmask
// width and CountOverflow when the count does not fit in 64 bits.
std::uint64_t count_extensions(Poset const& p);

//---------------------------------------------------------------------------//
// Uniform sampling
//---------------------------------------------------------------------------//

struct SamplerOptions
{
    // Use the exact counted-tree sampler when the count is at most this.
    std::uint64_t exact_cutoff = 100000;
    // Chain steps per MCMC draw; default_burn_in(m) when unset.
    std::optional<std::uint64_t> burn_in;
    bool force_mcmc = false;
    std::size_t max_ideals = IdealLattice::kDefaultMaxIdeals;
};

// ceil(m^3 ln m) + 100
std::uint64_t default_burn_in(std::size_t m);

// Greedy topological order, always taking the available element with the
// smallest (number of elements below it, index).
LinearExtension initial_extension(Poset const& p);

/*!
 * \brief Uniform sampler over the linear extensions of one poset.
 *
 * The exact path draws a uniform rank and unranks it through the ideal
 * lattice. Otherwise each draw runs the lazy adjacent-transposition chain of
 * Bubley and Dyer from the initial extension for burn_in steps: with
 * probability 1/2 stay, else pick an adjacent pair uniformly and swap it when
 * the swap keeps the order valid.
 */
class ExtensionSampler
{
  public:
    explicit ExtensionSampler(Poset p, SamplerOptions const& options = {});

    LinearExtension draw(CounterRng& rng) const;

    bool exact() const { return lattice_.has_value(); }
    std::uint64_t burn_in() const { return burn_in_; }
    Poset const& poset() const { return poset_; }
    std::optional<std::uint64_t> extension_count() const;

  private:
    Poset poset_;
    std::optional<IdealLattice> lattice_;
    LinearExtension initial_;
    std::uint64_t burn_in_;
};

LinearExtension sample_extension(Poset const& p, CounterRng& rng,
                                 SamplerOptions const& options = {});

//---------------------------------------------------------------------------//
// Mean heights
//---------------------------------------------------------------------------//

struct HeightSummary
{
    std::vector<double> mean_height;
    std::vector<int> rounded_height;
    bool exact = false;
    std::uint64_t n_extensions_or_draws = 0;
};

int round_half_up(double x);

struct ExactHeights
{
};

struct MonteCarloHeights
{
    std::uint64_t draws;
    std::uint64_t seed;
};

using HeightMode = std::variant<ExactHeights, MonteCarloHeights>;

HeightSummary mean_heights(Poset const& p, HeightMode const& mode,
                           SamplerOptions const& options = {});
// Monte Carlo heights drawing from an injected stream.
HeightSummary mean_heights_mc(Poset const& p, std::uint64_t draws,
                              CounterRng& rng,
                              SamplerOptions const& options = {});
HeightSummary summarize_heights(std::vector<double> mean_height, bool exact,
                                std::uint64_t count);

}  // namespace posetrss
