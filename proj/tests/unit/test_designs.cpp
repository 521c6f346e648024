#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "posetrss/designs.hpp"

using namespace posetrss;

namespace {

DesignConfig config(DesignKind kind, std::size_t m, std::size_t K, std::size_t n,
                    std::vector<std::size_t> ranking, std::vector<std::size_t> target)
{
    DesignConfig c;
    c.kind = kind;
    c.m = m;
    c.K = K;
    c.n = n;
    c.ranking_columns = std::move(ranking);
    c.target_columns = std::move(target);
    return c;
}

std::vector<std::string> labels_of(std::vector<RankedRecord> const& recs, ElementSet const& set)
{
    std::vector<std::string> out;
    for (auto const& r : recs)
        out.push_back(set.label(r.element));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementSet> random_sets(std::mt19937_64& gen, std::size_t K, std::size_t m,
                                    std::size_t r)
{
    std::normal_distribution<double> z;
    std::vector<ElementSet> sets;
    for (std::size_t k = 0; k < K; ++k)
    {
        std::vector<ElementVector> rows(m, ElementVector(r));
        for (auto& row : rows)
            for (auto& v : row)
                v = z(gen);
        sets.emplace_back(rows);
    }
    return sets;
}

}  // namespace

TEST(DesignConfig, Validation)
{
    auto c = config(DesignKind::Mvsr, 3, 4, 2, {0}, {0, 1});
    EXPECT_NO_THROW(c.validate());
    c.n = 4;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.n = 2;
    c.ranking_columns = {0, 1};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.kind = DesignKind::Rpor;
    EXPECT_NO_THROW(c.validate());
    c.m = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(parse_design_kind("cpor"), DesignKind::Cpor);
    EXPECT_FALSE(parse_design_kind("xyz").has_value());
}

TEST(Mvsr, SortsSingleSet)
{
    std::vector<ElementSet> sets{ElementSet({{5.0}, {1.0}, {3.0}})};
    auto const pop = build_mvsr(sets, config(DesignKind::Mvsr, 3, 1, 1, {0}, {0}), CounterRng(1));
    EXPECT_EQ(pop.stratum(1)[0].target_values[0], 1.0);
    EXPECT_EQ(pop.stratum(2)[0].target_values[0], 3.0);
    EXPECT_EQ(pop.stratum(3)[0].target_values[0], 5.0);
}

TEST(Mvsr, ConcomitantsRideAlong)
{
    std::vector<ElementSet> sets{ElementSet({{5.0, 50.0}, {1.0, 10.0}, {3.0, 30.0}})};
    auto const pop = build_mvsr(sets, config(DesignKind::Mvsr, 3, 1, 1, {0}, {1}), CounterRng(1));
    EXPECT_EQ(pop.stratum(1)[0].target_values[0], 10.0);
    EXPECT_EQ(pop.stratum(3)[0].target_values[0], 50.0);
}

TEST(Mvsr, FiveElementFirstColumn)
{
    auto const set = fixtures::five_elements();
    std::vector<ElementSet> sets{set};
    auto const cfg = config(DesignKind::Mvsr, 5, 1, 1, {0}, {0, 1});
    int a_first = 0;
    int const trials = 4000;
    for (int t = 0; t < trials; ++t)
    {
        auto const pop = build_mvsr(sets, cfg, CounterRng(static_cast<std::uint64_t>(t)));
        auto first = set.label(pop.stratum(1)[0].element);
        auto second = set.label(pop.stratum(2)[0].element);
        ASSERT_TRUE((first == "a" && second == "e") || (first == "e" && second == "a"));
        EXPECT_EQ(set.label(pop.stratum(3)[0].element), "c");
        EXPECT_EQ(set.label(pop.stratum(4)[0].element), "b");
        EXPECT_EQ(set.label(pop.stratum(5)[0].element), "d");
        a_first += first == "a";
    }
    // Tie broken fairly: binomial(4000, 1/2), 4 sd = 126.
    EXPECT_NEAR(a_first, trials / 2, 126);
}

TEST(Mvsr, NonDecreasingAcrossStrata)
{
    std::mt19937_64 gen(8);
    auto const sets = random_sets(gen, 10, 4, 2);
    auto const pop = build_mvsr(sets, config(DesignKind::Mvsr, 4, 10, 2, {1}, {0, 1}), CounterRng(5));
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t h = 1; h < 4; ++h)
            EXPECT_LE(pop.stratum(h)[i].ranking_values[0], pop.stratum(h + 1)[i].ranking_values[0]);
}

TEST(Cpor, FiveElementStrata)
{
    auto const set = fixtures::five_elements();
    std::vector<ElementSet> sets{set};
    auto const pop = build_cpor(sets, config(DesignKind::Cpor, 5, 1, 1, {0, 1}, {0, 1}), CounterRng(1));
    EXPECT_EQ(labels_of(pop.stratum(1), set), (std::vector<std::string>{"a"}));
    EXPECT_TRUE(pop.stratum(2).empty());
    EXPECT_EQ(labels_of(pop.stratum(3), set), (std::vector<std::string>{"b", "c"}));
    EXPECT_EQ(labels_of(pop.stratum(4), set), (std::vector<std::string>{"e"}));
    EXPECT_EQ(labels_of(pop.stratum(5), set), (std::vector<std::string>{"d"}));
    EXPECT_EQ(pop.exact_height_sets, 1u);
    ASSERT_TRUE(pop.stratum(3)[0].mean_height.has_value());
    EXPECT_DOUBLE_EQ(*pop.stratum(3)[0].mean_height, 2.875);
}

TEST(Cpor, DoubledFiveElement)
{
    std::vector<ElementSet> sets{fixtures::five_elements(), fixtures::five_elements()};
    auto const pop = build_cpor(sets, config(DesignKind::Cpor, 5, 2, 1, {0, 1}, {0}), CounterRng(1));
    EXPECT_EQ(pop.stratum_sizes(), (std::vector<std::size_t>{2, 0, 4, 2, 2}));
}

TEST(Cpor, ChainSetsFillEveryStratum)
{
    std::vector<ElementSet> sets(3, ElementSet({{0, 0}, {1, 1}, {2, 2}}));
    auto const pop = build_cpor(sets, config(DesignKind::Cpor, 3, 3, 1, {0, 1}, {0}), CounterRng(1));
    EXPECT_EQ(pop.stratum_sizes(), (std::vector<std::size_t>{3, 3, 3}));
}

TEST(Cpor, SizesSumAndRoundedHeights)
{
    std::mt19937_64 gen(12);
    auto const sets = random_sets(gen, 9, 4, 3);
    auto const pop = build_cpor(sets, config(DesignKind::Cpor, 4, 9, 2, {0, 1, 2}, {0}), CounterRng(2));
    std::size_t total = 0;
    for (std::size_t h = 1; h <= 4; ++h)
    {
        total += pop.stratum(h).size();
        for (auto const& r : pop.stratum(h))
            EXPECT_EQ(static_cast<std::size_t>(round_half_up(*r.mean_height)), h);
    }
    EXPECT_EQ(total, 36u);
}

TEST(Cpor, FallsBackToMonteCarloHeights)
{
    auto cfg = config(DesignKind::Cpor, 5, 1, 1, {0, 1}, {0});
    cfg.sampler.exact_cutoff = 4;
    cfg.height_mc_draws = 2000;
    std::vector<ElementSet> sets{fixtures::five_elements()};
    auto const pop = build_cpor(sets, cfg, CounterRng(6));
    EXPECT_EQ(pop.mc_height_sets, 1u);
    auto const sizes = pop.stratum_sizes();
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), 5u);
    // a is below everything and d above everything in every extension.
    EXPECT_EQ(pop.stratum(1).size(), 1u);
    EXPECT_EQ(pop.stratum(5).size(), 1u);
}

TEST(Rpor, ChainMatchesMvsr)
{
    std::vector<ElementSet> sets{ElementSet({{2, 2}, {0, 0}, {1, 1}}), ElementSet({{5, 6}, {3, 4}, {9, 9}})};
    auto const r = build_rpor(sets, config(DesignKind::Rpor, 3, 2, 1, {0, 1}, {0}), CounterRng(4));
    auto const v = build_mvsr(sets, config(DesignKind::Mvsr, 3, 2, 1, {0}, {0}), CounterRng(4));
    for (std::size_t h = 1; h <= 3; ++h)
        for (std::size_t i = 0; i < 2; ++i)
            EXPECT_EQ(r.stratum(h)[i].target_values, v.stratum(h)[i].target_values);
}

TEST(Rpor, EqualSizesAndOrderPreserving)
{
    std::mt19937_64 gen(77);
    auto const sets = random_sets(gen, 12, 4, 2);
    auto const cfg = config(DesignKind::Rpor, 4, 12, 3, {0, 1}, {0});
    auto const pop = build_rpor(sets, cfg, CounterRng(9));
    EXPECT_EQ(pop.stratum_sizes(), (std::vector<std::size_t>(4, 12)));
    for (std::size_t i = 0; i < 12; ++i)
    {
        std::vector<std::size_t> stratum_of(4);
        for (std::size_t h = 1; h <= 4; ++h)
            for (auto const& r : pop.stratum(h))
                if (r.set_index == i + 1)
                    stratum_of[r.element] = h;
        auto const p = build_poset(sets[i]);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
                if (p.below(a, b))
                    EXPECT_LT(stratum_of[a], stratum_of[b]);
    }
}

TEST(Rpor, FiveElementUniformOverExtensions)
{
    auto const set = fixtures::five_elements();
    std::vector<ElementSet> sets{set};
    auto const cfg = config(DesignKind::Rpor, 5, 1, 1, {0, 1}, {0});
    std::map<std::string, std::uint64_t> freq;
    for (std::uint64_t t = 0; t < 8000; ++t)
    {
        auto const pop = build_rpor(sets, cfg, CounterRng(t));
        std::string top_down;
        for (std::size_t h = 5; h >= 1; --h)
            top_down += set.label(pop.stratum(h)[0].element);
        ++freq[top_down];
    }
    auto const want = fixtures::five_elements_top_down();
    ASSERT_EQ(freq.size(), 8u);
    std::vector<std::uint64_t> counts;
    for (auto const& le : want)
        counts.push_back(freq.at(le));
    EXPECT_GT(oracle::chi_square_uniform_pvalue(counts), 1e-3);
}

TEST(Rpor, FlipsChangeThePoset)
{
    // Perfectly anti-correlated columns: an antichain unless one is flipped.
    std::vector<ElementSet> sets{ElementSet({{0, 3}, {1, 2}, {2, 1}, {3, 0}})};
    auto cfg = config(DesignKind::Rpor, 4, 1, 1, {0, 1}, {0});
    cfg.sign_flips = SignFlipMask(std::vector<bool>{false, true});
    for (std::uint64_t t = 0; t < 20; ++t)
    {
        auto const pop = build_rpor(sets, cfg, CounterRng(t));
        for (std::size_t h = 1; h <= 4; ++h)
            EXPECT_EQ(pop.stratum(h)[0].target_values[0], static_cast<double>(h - 1));
    }
}

TEST(Designs, SeedDeterminism)
{
    std::mt19937_64 gen(1);
    auto const sets = random_sets(gen, 6, 3, 2);
    for (auto kind : {DesignKind::Mvsr, DesignKind::Cpor, DesignKind::Rpor})
    {
        auto const cfg = config(kind, 3, 6, 2, kind == DesignKind::Mvsr ? std::vector<std::size_t>{0}
                                                                         : std::vector<std::size_t>{0, 1},
                                {0, 1});
        auto const a = build_population(sets, cfg, CounterRng(5));
        auto const b = build_population(sets, cfg, CounterRng(5));
        auto const alloc = allocate(a, 2);
        auto const sa = draw_stratified_sample(a, alloc, CounterRng(6));
        auto const sb = draw_stratified_sample(b, alloc, CounterRng(6));
        for (std::size_t h = 0; h < 3; ++h)
        {
            ASSERT_EQ(a.strata()[h].size(), b.strata()[h].size());
            for (std::size_t i = 0; i < a.strata()[h].size(); ++i)
                EXPECT_EQ(a.strata()[h][i].target_values, b.strata()[h][i].target_values);
            for (std::size_t i = 0; i < sa[h].size(); ++i)
                EXPECT_EQ(sa[h][i].target_values, sb[h][i].target_values);
        }
    }
}

TEST(Allocation, Examples)
{
    std::vector<std::size_t> doubled{2, 0, 4, 2, 2};
    EXPECT_EQ(allocate_proportional(doubled, 5).n_h, (std::vector<std::size_t>{1, 0, 2, 1, 1}));
    std::vector<std::size_t> equal{8, 8, 8};
    EXPECT_EQ(allocate_proportional(equal, 12).n_h, (std::vector<std::size_t>{4, 4, 4}));
    std::vector<std::size_t> skewed{1, 9};
    EXPECT_EQ(allocate_proportional(skewed, 2).n_h, (std::vector<std::size_t>{1, 1}));
    EXPECT_THROW(allocate_proportional(skewed, 11), std::invalid_argument);
    std::vector<std::size_t> three{1, 1, 5};
    EXPECT_THROW(allocate_proportional(three, 2), std::invalid_argument);
}

TEST(Allocation, FuzzInvariants)
{
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::size_t> strata(1, 7), size(0, 10);
    for (int trial = 0; trial < 2000; ++trial)
    {
        std::vector<std::size_t> sizes(strata(gen));
        for (auto& s : sizes)
            s = size(gen);
        std::size_t const sum = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        auto const non_empty = static_cast<std::size_t>(
            std::count_if(sizes.begin(), sizes.end(), [](std::size_t k) { return k > 0; }));
        if (sum == 0)
            continue;
        std::uniform_int_distribution<std::size_t> tot(non_empty, sum);
        std::size_t const total = tot(gen);
        auto const a = allocate_proportional(sizes, total);
        ASSERT_EQ(a.total(), total);
        for (std::size_t h = 0; h < sizes.size(); ++h)
        {
            ASSERT_LE(a.n_h[h], sizes[h]);
            ASSERT_EQ(a.n_h[h] == 0, sizes[h] == 0);
        }
    }
}

TEST(Srswor, WholeStratumAndErrors)
{
    std::vector<RankedRecord> recs(3);
    for (std::size_t i = 0; i < 3; ++i)
        recs[i].element = i;
    CounterRng rng(1);
    auto all = draw_srswor(recs, 3, rng);
    std::vector<std::size_t> got;
    for (auto const& r : all)
        got.push_back(r.element);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_THROW(draw_srswor(recs, 4, rng), std::invalid_argument);
}

TEST(Srswor, SinglesAndPairsEquiprobable)
{
    std::vector<RankedRecord> recs(3);
    for (std::size_t i = 0; i < 3; ++i)
        recs[i].element = i;
    CounterRng rng(123);
    std::vector<std::uint64_t> singles(3, 0);
    int const n = 30000;
    for (int t = 0; t < n; ++t)
        ++singles[draw_srswor(recs, 1, rng)[0].element];
    // binomial(30000, 1/3): 3 sd = 245
    for (auto c : singles)
        EXPECT_NEAR(static_cast<double>(c), n / 3.0, 245.0);

    std::vector<std::uint64_t> pairs(3, 0);
    for (int t = 0; t < n; ++t)
    {
        auto s = draw_srswor(recs, 2, rng);
        // the pair is identified by the element left out
        ++pairs[3 - s[0].element - s[1].element];
    }
    EXPECT_GT(oracle::chi_square_uniform_pvalue(pairs), 1e-3);
}
