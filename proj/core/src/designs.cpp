#include "posetrss/designs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace posetrss {
namespace {

ElementVector pick(std::span<const double> values,
                   std::span<const std::size_t> columns)
{
    ElementVector out;
    out.reserve(columns.size());
    for (auto c : columns)
    {
        if (c >= values.size())
            throw DimensionMismatch("design: column index out of range");
        out.push_back(values[c]);
    }
    return out;
}

RankedRecord make_record(ElementSet const& set, std::size_t element,
                         DesignConfig const& cfg, std::size_t set_index,
                         std::size_t stratum)
{
    RankedRecord r;
    r.ranking_values = pick(set[element], cfg.ranking_columns);
    r.target_values = pick(set[element], cfg.target_columns);
    r.set_index = set_index;
    r.element = element;
    r.stratum = stratum;
    return r;
}

void check_sets(std::span<const ElementSet> sets, DesignConfig const& cfg)
{
    cfg.validate_structure();
    if (sets.size() != cfg.K)
    {
        throw std::invalid_argument("design: got " + std::to_string(sets.size())
                                    + " sets, config says K = "
                                    + std::to_string(cfg.K));
    }
    for (auto const& s : sets)
    {
        if (s.size() != cfg.m)
        {
            throw std::invalid_argument("design: set of size "
                                        + std::to_string(s.size())
                                        + ", config says m = "
                                        + std::to_string(cfg.m));
        }
    }
}

Poset ranking_poset(ElementSet const& set, DesignConfig const& cfg)
{
    return build_poset(set.project(cfg.ranking_columns), cfg.effective_flips());
}

}  // namespace

std::string_view to_string(DesignKind kind)
{
    switch (kind)
    {
        case DesignKind::Mvsr: return "MVSR";
        case DesignKind::Cpor: return "CPOR";
        case DesignKind::Rpor: return "RPOR";
        case DesignKind::Srs: return "SRS";
    }
    return "?";
}

std::optional<DesignKind> parse_design_kind(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mvsr")
        return DesignKind::Mvsr;
    if (lower == "cpor")
        return DesignKind::Cpor;
    if (lower == "rpor")
        return DesignKind::Rpor;
    if (lower == "srs")
        return DesignKind::Srs;
    return std::nullopt;
}

void DesignConfig::validate() const
{
    validate_structure();
    if (n < 1 || n >= K)
        throw std::invalid_argument("DesignConfig: need 1 <= n < K (n = "
                                    + std::to_string(n) + ", K = "
                                    + std::to_string(K) + ")");
}

void DesignConfig::validate_structure() const
{
    if (m < 2)
        throw std::invalid_argument("DesignConfig: m must be >= 2");
    if (K < 1)
        throw std::invalid_argument("DesignConfig: K must be >= 1");
    if (ranking_columns.empty())
        throw std::invalid_argument("DesignConfig: no ranking columns");
    if (target_columns.empty())
        throw std::invalid_argument("DesignConfig: no target columns");
    if (kind == DesignKind::Srs)
        throw std::invalid_argument("DesignConfig: SRS is not a stratified design");
    if (kind == DesignKind::Mvsr && ranking_columns.size() != 1)
        throw std::invalid_argument("DesignConfig: MVSR ranks on exactly one column");
    if (sign_flips.size() != 0 && sign_flips.size() != ranking_columns.size())
        throw std::invalid_argument("DesignConfig: sign flip mask must cover "
                                    "the ranking columns");
}

SignFlipMask DesignConfig::effective_flips() const
{
    if (sign_flips.size() == 0)
        return SignFlipMask(ranking_columns.size());
    return sign_flips;
}

//---------------------------------------------------------------------------//

StratifiedPopulation::StratifiedPopulation(DesignKind kind, std::size_t K,
                                           StratumLists strata)
    : kind_(kind), K_(K), strata_(std::move(strata))
{
    for (std::size_t h = 0; h < strata_.size(); ++h)
    {
        for (auto const& r : strata_[h])
        {
            if (r.stratum != h + 1)
                throw std::logic_error("StratifiedPopulation: record in wrong stratum");
        }
    }
}

std::vector<std::size_t> StratifiedPopulation::stratum_sizes() const
{
    std::vector<std::size_t> out;
    out.reserve(strata_.size());
    for (auto const& s : strata_)
        out.push_back(s.size());
    return out;
}

std::size_t Allocation::total() const
{
    return std::accumulate(n_h.begin(), n_h.end(), std::size_t{0});
}

//---------------------------------------------------------------------------//
// Builders
//---------------------------------------------------------------------------//

StratifiedPopulation build_mvsr(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream)
{
    check_sets(sets, cfg);
    if (cfg.kind != DesignKind::Mvsr)
        throw std::invalid_argument("build_mvsr: config is not MVSR");
    std::size_t const col = cfg.ranking_columns.front();
    StratumLists strata(cfg.m);
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
        auto const& set = sets[i];
        CounterRng rng = stream.split(i + 1);
        struct Key
        {
            double value;
            std::uint64_t tie;
            std::size_t element;
        };
        std::vector<Key> keys;
        keys.reserve(set.size());
        for (std::size_t e = 0; e < set.size(); ++e)
        {
            if (col >= set.dimension())
                throw DimensionMismatch("build_mvsr: ranking column out of range");
            keys.push_back({set[e][col], rng(), e});
        }
        std::sort(keys.begin(), keys.end(), [](Key const& a, Key const& b) {
            if (a.value != b.value)
                return a.value < b.value;
            if (a.tie != b.tie)
                return a.tie < b.tie;
            return a.element < b.element;
        });
        for (std::size_t h = 0; h < keys.size(); ++h)
            strata[h].push_back(make_record(set, keys[h].element, cfg, i + 1, h + 1));
    }
    return StratifiedPopulation(DesignKind::Mvsr, cfg.K, std::move(strata));
}

HeightSummary set_heights(ElementSet const& set, DesignConfig const& cfg,
                          CounterRng const& set_stream)
{
    Poset const poset = ranking_poset(set, cfg);
    if (poset.size() <= kMaxBitmaskElements)
    {
        try
        {
            IdealLattice lattice(poset, cfg.sampler.max_ideals);
            if (lattice.extension_count() <= cfg.sampler.exact_cutoff)
            {
                return summarize_heights(lattice.mean_heights(), true,
                                         lattice.extension_count());
            }
        }
        catch (PosetTooLarge const&)
        {
        }
        catch (CountOverflow const&)
        {
        }
    }
    CounterRng rng = set_stream;
    return mean_heights_mc(poset, cfg.height_mc_draws, rng, cfg.sampler);
}

StratifiedPopulation build_cpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                std::span<const HeightSummary> heights)
{
    check_sets(sets, cfg);
    if (heights.size() != sets.size())
        throw std::invalid_argument("build_cpor: need one height summary per set");
    StratumLists strata(cfg.m);
    std::size_t exact_sets = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
        auto const& hs = heights[i];
        if (hs.mean_height.size() != cfg.m)
            throw std::invalid_argument("build_cpor: height summary size mismatch");
        if (hs.exact)
            ++exact_sets;
        for (std::size_t e = 0; e < cfg.m; ++e)
        {
            int const h = hs.rounded_height[e];
            if (h < 1 || static_cast<std::size_t>(h) > cfg.m)
                throw std::logic_error("build_cpor: rounded height out of range");
            auto rec = make_record(sets[i], e, cfg, i + 1, static_cast<std::size_t>(h));
            rec.mean_height = hs.mean_height[e];
            strata[static_cast<std::size_t>(h) - 1].push_back(std::move(rec));
        }
    }
    StratifiedPopulation pop(DesignKind::Cpor, cfg.K, std::move(strata));
    pop.exact_height_sets = exact_sets;
    pop.mc_height_sets = sets.size() - exact_sets;
    return pop;
}

StratifiedPopulation build_cpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream)
{
    check_sets(sets, cfg);
    std::vector<HeightSummary> heights;
    heights.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
        heights.push_back(set_heights(sets[i], cfg, stream.split(i + 1)));
    return build_cpor(sets, cfg, heights);
}

StratifiedPopulation build_rpor(std::span<const ElementSet> sets,
                                DesignConfig const& cfg,
                                CounterRng const& stream)
{
    check_sets(sets, cfg);
    StratumLists strata(cfg.m);
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
        CounterRng rng = stream.split(i + 1);
        auto const le = sample_extension(ranking_poset(sets[i], cfg), rng, cfg.sampler);
        for (std::size_t pos = 0; pos < le.order.size(); ++pos)
            strata[pos].push_back(make_record(sets[i], le.order[pos], cfg, i + 1, pos + 1));
    }
    return StratifiedPopulation(DesignKind::Rpor, cfg.K, std::move(strata));
}

StratifiedPopulation build_population(std::span<const ElementSet> sets,
                                      DesignConfig const& cfg,
                                      CounterRng const& stream)
{
    switch (cfg.kind)
    {
        case DesignKind::Mvsr: return build_mvsr(sets, cfg, stream);
        case DesignKind::Cpor: return build_cpor(sets, cfg, stream);
        case DesignKind::Rpor: return build_rpor(sets, cfg, stream);
        case DesignKind::Srs: break;
    }
    throw std::invalid_argument("build_population: SRS has no stratified population");
}

//---------------------------------------------------------------------------//
// Allocation and sampling
//---------------------------------------------------------------------------//

Allocation allocate_proportional(std::span<const std::size_t> stratum_sizes,
                                 std::size_t total)
{
    std::size_t const strata = stratum_sizes.size();
    std::size_t const size_sum
        = std::accumulate(stratum_sizes.begin(), stratum_sizes.end(), std::size_t{0});
    if (total > size_sum)
    {
        throw std::invalid_argument("allocate_proportional: total "
                                    + std::to_string(total)
                                    + " exceeds population size "
                                    + std::to_string(size_sum));
    }
    auto const non_empty = static_cast<std::size_t>(std::count_if(
        stratum_sizes.begin(), stratum_sizes.end(), [](std::size_t k) { return k > 0; }));
    if (total < non_empty)
    {
        throw std::invalid_argument("allocate_proportional: total "
                                    + std::to_string(total) + " cannot cover "
                                    + std::to_string(non_empty)
                                    + " non-empty strata");
    }

    Allocation alloc;
    alloc.n_h.assign(strata, 0);
    if (total == 0)
        return alloc;

    // quota_h = total * K_h / size_sum, kept as integers scaled by size_sum.
    std::vector<std::size_t> remainder(strata);
    std::size_t assigned = 0;
    for (std::size_t h = 0; h < strata; ++h)
    {
        std::size_t const scaled = total * stratum_sizes[h];
        alloc.n_h[h] = scaled / size_sum;
        remainder[h] = scaled % size_sum;
        assigned += alloc.n_h[h];
    }
    std::vector<std::size_t> by_remainder(strata);
    std::iota(by_remainder.begin(), by_remainder.end(), std::size_t{0});
    std::stable_sort(by_remainder.begin(), by_remainder.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < total; ++k)
    {
        ++alloc.n_h[by_remainder[k % strata]];
        ++assigned;
    }

    // Signed excess over quota, scaled by size_sum.
    auto excess = [&](std::size_t h) {
        return static_cast<long double>(alloc.n_h[h]) * size_sum
               - static_cast<long double>(total) * stratum_sizes[h];
    };

    // At least one unit in each non-empty stratum.
    for (std::size_t h = 0; h < strata; ++h)
    {
        if (stratum_sizes[h] == 0 || alloc.n_h[h] > 0)
            continue;
        std::size_t donor = strata;
        for (std::size_t g = 0; g < strata; ++g)
        {
            if (alloc.n_h[g] < 2)
                continue;
            if (donor == strata || excess(g) > excess(donor))
                donor = g;
        }
        if (donor == strata)
            throw std::logic_error("allocate_proportional: no donor stratum");
        --alloc.n_h[donor];
        alloc.n_h[h] = 1;
    }

    // Cap at stratum size, moving overflow to the strata furthest below quota.
    for (std::size_t h = 0; h < strata; ++h)
    {
        while (alloc.n_h[h] > stratum_sizes[h])
        {
            std::size_t target = strata;
            for (std::size_t g = 0; g < strata; ++g)
            {
                if (alloc.n_h[g] >= stratum_sizes[g])
                    continue;
                if (target == strata || excess(g) < excess(target))
                    target = g;
            }
            if (target == strata)
                throw std::invalid_argument("allocate_proportional: no feasible allocation");
            --alloc.n_h[h];
            ++alloc.n_h[target];
        }
    }
    return alloc;
}

Allocation allocate(StratifiedPopulation const& pop, std::size_t n)
{
    if (pop.kind() == DesignKind::Cpor)
        return allocate_proportional(pop.stratum_sizes(), n * pop.m());
    Allocation alloc;
    alloc.n_h.assign(pop.m(), n);
    for (auto size : pop.stratum_sizes())
    {
        if (size < n)
            throw std::invalid_argument("allocate: stratum smaller than n");
    }
    return alloc;
}

std::vector<RankedRecord> draw_srswor(std::span<const RankedRecord> stratum,
                                      std::size_t n_h, CounterRng& rng)
{
    if (n_h > stratum.size())
    {
        throw std::invalid_argument("draw_srswor: sample of "
                                    + std::to_string(n_h)
                                    + " from a stratum of "
                                    + std::to_string(stratum.size()));
    }
    std::vector<std::size_t> idx(stratum.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<RankedRecord> out;
    out.reserve(n_h);
    for (std::size_t k = 0; k < n_h; ++k)
    {
        auto const j = k + static_cast<std::size_t>(rng.below(idx.size() - k));
        std::swap(idx[k], idx[j]);
        out.push_back(stratum[idx[k]]);
    }
    return out;
}

StratumLists draw_stratified_sample(StratifiedPopulation const& pop,
                                    Allocation const& alloc,
                                    CounterRng const& stream)
{
    if (alloc.n_h.size() != pop.m())
        throw std::invalid_argument("draw_stratified_sample: allocation size mismatch");
    StratumLists out(pop.m());
    for (std::size_t h = 1; h <= pop.m(); ++h)
    {
        CounterRng rng = stream.split(h);
        out[h - 1] = draw_srswor(pop.stratum(h), alloc.n_h[h - 1], rng);
    }
    return out;
}

}  // namespace posetrss
