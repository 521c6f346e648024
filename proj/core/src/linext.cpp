#include "posetrss/linext.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace posetrss {

// GCC/Clang extension; exact 64x64 -> 128-bit products.
__extension__ using u128 = unsigned __int128;

namespace {

constexpr std::uint32_t kNoIndex = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kDenseIndexElements = 16;

void require_bitmask_size(Poset const& p, char const* who)
{
    if (p.size() > kMaxBitmaskElements)
    {
        throw PosetTooLarge(std::string(who) + ": " + std::to_string(p.size())
                            + " elements exceed the bitmask width of "
                            + std::to_string(kMaxBitmaskElements));
    }
}

std::vector<std::uint64_t> predecessor_masks(Poset const& p)
{
    std::vector<std::uint64_t> pred(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.below(i, j))
                pred[j] |= std::uint64_t{1} << i;
    return pred;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw CountOverflow("linear extension count exceeds 64 bits");
    return out;
}

std::uint64_t full_mask(std::size_t m)
{
    return m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

struct Enumerator
{
    std::vector<std::uint64_t> const& pred;
    std::size_t m;
    std::uint64_t cap;
    std::vector<std::size_t> prefix;
    std::vector<LinearExtension> out;
    bool exceeded = false;

    void run(std::uint64_t placed)
    {
        if (prefix.size() == m)
        {
            if (out.size() >= cap)
            {
                exceeded = true;
                return;
            }
            out.push_back(LinearExtension{prefix});
            return;
        }
        for (std::size_t x = 0; x < m && !exceeded; ++x)
        {
            if ((placed >> x & 1u) || (pred[x] & ~placed) != 0)
                continue;
            prefix.push_back(x);
            run(placed | std::uint64_t{1} << x);
            prefix.pop_back();
        }
    }
};

}  // namespace

std::vector<std::size_t> LinearExtension::heights() const
{
    std::vector<std::size_t> h(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        h[order[pos]] = pos + 1;
    return h;
}

bool is_linear_extension(Poset const& p, LinearExtension const& le)
{
    std::size_t const m = p.size();
    if (le.order.size() != m)
        return false;
    std::vector<std::size_t> pos(m, m);
    for (std::size_t k = 0; k < m; ++k)
    {
        std::size_t const e = le.order[k];
        if (e >= m || pos[e] != m)
            return false;
        pos[e] = k;
    }
    for (auto [i, j] : p.cover_edges())
    {
        if (pos[i] > pos[j])
            return false;
    }
    return true;
}

std::variant<std::vector<LinearExtension>, CapExceeded>
enumerate_extensions(Poset const& p, std::uint64_t cap)
{
    require_bitmask_size(p, "enumerate_extensions");
    if (cap == 0)
        throw std::invalid_argument("enumerate_extensions: cap must be >= 1");
    auto const pred = predecessor_masks(p);
    Enumerator e{pred, p.size(), cap, {}, {}, false};
    e.prefix.reserve(p.size());
    e.run(0);
    if (e.exceeded)
        return CapExceeded{cap};
    return std::move(e.out);
}

//---------------------------------------------------------------------------//
// IdealLattice
//---------------------------------------------------------------------------//

IdealLattice::IdealLattice(Poset const& p, std::size_t max_ideals)
    : m_(p.size()), full_(0)
{
    require_bitmask_size(p, "IdealLattice");
    full_ = full_mask(m_);
    predecessors_ = predecessor_masks(p);
    if (m_ <= kDenseIndexElements)
        dense_index_.assign(std::size_t{1} << m_, kNoIndex);

    auto insert = [&](std::uint64_t mask) -> std::uint32_t {
        if (!dense_index_.empty())
        {
            auto& slot = dense_index_[mask];
            if (slot == kNoIndex)
            {
                slot = static_cast<std::uint32_t>(ideals_.size());
                ideals_.push_back(mask);
                below_.push_back(0);
            }
            return slot;
        }
        auto [it, inserted] = sparse_index_.try_emplace(
            mask, static_cast<std::uint32_t>(ideals_.size()));
        if (inserted)
        {
            ideals_.push_back(mask);
            below_.push_back(0);
        }
        return it->second;
    };

    insert(0);
    below_[0] = 1;
    // Ideals are discovered one layer (size) at a time, so every ideal's
    // bottom count is final before it is expanded.
    for (std::size_t k = 0; k < ideals_.size(); ++k)
    {
        std::uint64_t const d = ideals_[k];
        for (std::size_t x = 0; x < m_; ++x)
        {
            if (!addable(d, x))
                continue;
            auto const idx = insert(d | std::uint64_t{1} << x);
            below_[idx] = checked_add(below_[idx], below_[k]);
            if (ideals_.size() > max_ideals)
            {
                throw PosetTooLarge("IdealLattice: more than "
                                    + std::to_string(max_ideals)
                                    + " down-sets");
            }
        }
    }

    above_.assign(ideals_.size(), 0);
    above_.back() = 1;  // the full set is discovered last
    for (std::size_t k = ideals_.size() - 1; k-- > 0;)
    {
        std::uint64_t const d = ideals_[k];
        std::uint64_t total = 0;
        for (std::size_t x = 0; x < m_; ++x)
        {
            if (addable(d, x))
                total = checked_add(total, above_[index_of(d | std::uint64_t{1} << x)]);
        }
        above_[k] = total;
    }
}

std::size_t IdealLattice::index_of(std::uint64_t mask) const
{
    if (!dense_index_.empty())
        return dense_index_[mask];
    return sparse_index_.at(mask);
}

std::vector<double> IdealLattice::mean_heights() const
{
    std::vector<u128> numerator(m_, 0);
    for (std::size_t k = 0; k < ideals_.size(); ++k)
    {
        std::uint64_t const d = ideals_[k];
        auto const height = static_cast<unsigned>(std::popcount(d)) + 1u;
        for (std::size_t x = 0; x < m_; ++x)
        {
            if (!addable(d, x))
                continue;
            // below * above is bounded by the total count, so no overflow.
            std::uint64_t const ways
                = below_[k] * above_[index_of(d | std::uint64_t{1} << x)];
            numerator[x] += static_cast<u128>(ways) * height;
        }
    }
    auto const total = static_cast<double>(extension_count());
    std::vector<double> out(m_);
    for (std::size_t x = 0; x < m_; ++x)
        out[x] = static_cast<double>(numerator[x]) / total;
    return out;
}

LinearExtension IdealLattice::unrank(std::uint64_t index) const
{
    if (index >= extension_count())
        throw std::out_of_range("IdealLattice::unrank: index out of range");
    LinearExtension le;
    le.order.reserve(m_);
    std::uint64_t d = 0;
    while (d != full_)
    {
        for (std::size_t x = 0; x < m_; ++x)
        {
            if (!addable(d, x))
                continue;
            std::uint64_t const next = d | std::uint64_t{1} << x;
            std::uint64_t const c = above_[index_of(next)];
            if (index < c)
            {
                le.order.push_back(x);
                d = next;
                break;
            }
            index -= c;
        }
    }
    return le;
}

std::uint64_t count_extensions(Poset const& p)
{
    return IdealLattice(p).extension_count();
}

//---------------------------------------------------------------------------//
// Sampling
//---------------------------------------------------------------------------//

std::uint64_t default_burn_in(std::size_t m)
{
    if (m < 2)
        return 100;
    double const md = static_cast<double>(m);
    return static_cast<std::uint64_t>(std::ceil(md * md * md * std::log(md))) + 100;
}

LinearExtension initial_extension(Poset const& p)
{
    std::size_t const m = p.size();
    std::vector<std::size_t> indegree(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (p.below(i, j))
                ++indegree[j];
    std::vector<std::size_t> remaining = indegree;
    std::vector<bool> placed(m, false);
    LinearExtension le;
    le.order.reserve(m);
    for (std::size_t step = 0; step < m; ++step)
    {
        std::size_t best = m;
        for (std::size_t x = 0; x < m; ++x)
        {
            if (placed[x] || remaining[x] != 0)
                continue;
            if (best == m || indegree[x] < indegree[best])
                best = x;
        }
        placed[best] = true;
        le.order.push_back(best);
        for (std::size_t j = 0; j < m; ++j)
            if (p.below(best, j))
                --remaining[j];
    }
    return le;
}

ExtensionSampler::ExtensionSampler(Poset p, SamplerOptions const& options)
    : poset_(std::move(p))
    , initial_(initial_extension(poset_))
    , burn_in_(options.burn_in.value_or(default_burn_in(poset_.size())))
{
    if (options.force_mcmc || poset_.size() > kMaxBitmaskElements)
        return;
    try
    {
        IdealLattice lattice(poset_, options.max_ideals);
        if (lattice.extension_count() <= options.exact_cutoff)
            lattice_.emplace(std::move(lattice));
    }
    catch (PosetTooLarge const&)
    {
    }
    catch (CountOverflow const&)
    {
    }
}

std::optional<std::uint64_t> ExtensionSampler::extension_count() const
{
    if (lattice_)
        return lattice_->extension_count();
    return std::nullopt;
}

LinearExtension ExtensionSampler::draw(CounterRng& rng) const
{
    if (lattice_)
        return lattice_->unrank(rng.below(lattice_->extension_count()));

    LinearExtension le = initial_;
    std::size_t const m = le.order.size();
    if (m < 2)
        return le;
    for (std::uint64_t step = 0; step < burn_in_; ++step)
    {
        if (rng.coin())
            continue;
        auto const i = static_cast<std::size_t>(rng.below(m - 1));
        std::size_t const a = le.order[i];
        std::size_t const b = le.order[i + 1];
        if (!poset_.below(a, b))
            std::swap(le.order[i], le.order[i + 1]);
    }
    return le;
}

LinearExtension sample_extension(Poset const& p, CounterRng& rng,
                                 SamplerOptions const& options)
{
    return ExtensionSampler(p, options).draw(rng);
}

//---------------------------------------------------------------------------//
// Heights
//---------------------------------------------------------------------------//

int round_half_up(double x)
{
    return static_cast<int>(std::floor(x + 0.5));
}

HeightSummary summarize_heights(std::vector<double> mean_height, bool exact,
                                std::uint64_t count)
{
    HeightSummary s;
    s.rounded_height.reserve(mean_height.size());
    for (double h : mean_height)
        s.rounded_height.push_back(round_half_up(h));
    s.mean_height = std::move(mean_height);
    s.exact = exact;
    s.n_extensions_or_draws = count;
    return s;
}

HeightSummary mean_heights_mc(Poset const& p, std::uint64_t draws,
                              CounterRng& rng, SamplerOptions const& options)
{
    if (draws == 0)
        throw std::invalid_argument("mean_heights: Monte Carlo needs draws >= 1");
    ExtensionSampler sampler(p, options);
    std::vector<std::uint64_t> sum(p.size(), 0);
    for (std::uint64_t t = 0; t < draws; ++t)
    {
        auto const le = sampler.draw(rng);
        for (std::size_t pos = 0; pos < le.order.size(); ++pos)
            sum[le.order[pos]] += pos + 1;
    }
    std::vector<double> mean(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        mean[x] = static_cast<double>(sum[x]) / static_cast<double>(draws);
    return summarize_heights(std::move(mean), false, draws);
}

HeightSummary mean_heights(Poset const& p, HeightMode const& mode,
                           SamplerOptions const& options)
{
    if (auto const* mc = std::get_if<MonteCarloHeights>(&mode))
    {
        CounterRng rng(mc->seed);
        return mean_heights_mc(p, mc->draws, rng, options);
    }
    IdealLattice lattice(p, options.max_ideals);
    return summarize_heights(lattice.mean_heights(), true,
                             lattice.extension_count());
}

}  // namespace posetrss
