#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "posetrss/poset.hpp"

using namespace posetrss;

TEST(Compare, FiveElementPairs)
{
    auto const s = fixtures::five_elements();
    EXPECT_EQ(compare(s[0], s[3]), Ordering::Below);
    EXPECT_EQ(compare(s[3], s[0]), Ordering::Above);
    EXPECT_EQ(compare(s[4], s[3]), Ordering::Incomparable);
    std::vector<double> x{1, 2};
    EXPECT_EQ(compare(x, x), Ordering::Equal);
}

TEST(Compare, LengthMismatchThrows)
{
    std::vector<double> a{1, 2}, b{1};
    EXPECT_THROW(compare(a, b), DimensionMismatch);
}

TEST(ElementSet, Validation)
{
    EXPECT_THROW(ElementSet(std::vector<ElementVector>{{1.0}}), std::invalid_argument);
    EXPECT_THROW(ElementSet({{1.0, 2.0}, {1.0}}), DimensionMismatch);
    EXPECT_THROW(ElementSet(std::vector<ElementVector>{{1.0}, {NAN}}), std::invalid_argument);
    EXPECT_THROW(ElementSet({{1.0}, {2.0}}, {"x", "x"}), std::invalid_argument);
    ElementSet s(std::vector<ElementVector>{{1.0}, {2.0}});
    EXPECT_EQ(s.label(0), "e1");
    EXPECT_EQ(s.label(1), "e2");
}

TEST(ElementSet, Project)
{
    ElementSet s({{1, 2, 3}, {4, 5, 6}});
    std::vector<std::size_t> cols{2, 0};
    auto p = s.project(cols);
    EXPECT_EQ(p.elements()[1], (ElementVector{6, 4}));
}

TEST(Poset, FiveElementRelation)
{
    auto const p = build_poset(fixtures::five_elements());
    std::vector<Poset::Edge> expected{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {2, 3}};
    EXPECT_EQ(p.relation_pairs(), expected);
    // a < b < d and a < c < d leave a < d implied; e only covers a.
    std::vector<Poset::Edge> covers{{0, 1}, {0, 2}, {0, 4}, {1, 3}, {2, 3}};
    EXPECT_EQ(p.cover_edges(), covers);
}

TEST(Poset, MatchesBruteForceDominance)
{
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> v(0, 3);
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<ElementVector> x(6, ElementVector(3));
        for (auto& row : x)
            for (auto& c : row)
                c = v(gen);
        auto const p = build_poset(ElementSet(x));
        auto const r = oracle::dominance(x);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                ASSERT_EQ(p.below(i, j), r[i][j]);
    }
}

TEST(Poset, ChainHasMinusOneCovers)
{
    ElementSet s({{0, 0}, {1, 1}, {2, 3}, {5, 5}});
    auto const p = build_poset(s);
    EXPECT_EQ(p, Poset::chain(4));
    EXPECT_EQ(p.cover_edges().size(), 3u);
}

TEST(Poset, SwappedPairIsAntichain)
{
    auto const p = build_poset(ElementSet({{1, 2}, {2, 1}}));
    EXPECT_EQ(p, Poset::antichain(2));
}

TEST(Poset, IdenticalVectorsGetNoEdge)
{
    auto const p = build_poset(ElementSet({{1, 1}, {1, 1}, {2, 2}}));
    EXPECT_FALSE(p.comparable(0, 1));
    EXPECT_TRUE(p.below(0, 2));
    EXPECT_TRUE(p.below(1, 2));
}

TEST(Poset, SignFlipReversesColumn)
{
    ElementSet s({{1, 2}, {2, 1}});
    SignFlipMask mask(2);
    mask.set(1, true);
    auto const p = build_poset(s, mask);
    EXPECT_TRUE(p.below(0, 1));
    EXPECT_THROW(build_poset(s, SignFlipMask(3)), DimensionMismatch);
}

TEST(Poset, ConstructionChecks)
{
    EXPECT_THROW(Poset::from_relation(2, {1, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(Poset::from_relation(2, {0, 1, 1, 0}), std::invalid_argument);
    // 0<1, 1<2 without 0<2 is not transitive.
    EXPECT_THROW(Poset::from_relation(3, {0, 1, 0, 0, 0, 1, 0, 0, 0}), std::invalid_argument);
    std::vector<Poset::Edge> cycle{{0, 1}, {1, 2}, {2, 0}};
    EXPECT_THROW(Poset::from_edges(3, cycle), std::invalid_argument);
    std::vector<Poset::Edge> path{{0, 1}, {1, 2}};
    EXPECT_EQ(Poset::from_edges(3, path), Poset::chain(3));
}

TEST(Poset, DualReverses)
{
    auto const p = build_poset(fixtures::five_elements());
    auto const d = p.dual();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            EXPECT_EQ(p.below(i, j), d.below(j, i));
}

TEST(Correlations, DuplicateAndNegatedColumns)
{
    std::vector<ElementVector> rows{{1, 1, -1}, {2, 2, -2}, {4, 4, -4}, {3, 3, -3}};
    auto const c = pairwise_correlations(rows);
    EXPECT_NEAR(c(0, 1), 1.0, 1e-12);
    EXPECT_NEAR(c(0, 2), -1.0, 1e-12);
    EXPECT_DOUBLE_EQ(c(2, 2), 1.0);
}

TEST(Correlations, ThreePointHandValue)
{
    // Sxy = 4, Sxx = 2, Syy = 78/9.
    std::vector<ElementVector> rows{{0, 0}, {1, 1}, {2, 4}};
    auto const c = pairwise_correlations(rows);
    EXPECT_NEAR(c(0, 1), 4.0 / std::sqrt(2.0 * 78.0 / 9.0), 1e-12);
    EXPECT_NEAR(c(0, 1), 0.96077, 1e-5);
}

TEST(Correlations, ConstantColumnIsNamed)
{
    std::vector<ElementVector> rows{{1, 5}, {2, 5}, {3, 5}};
    std::vector<std::string> names{"Pb", "Cd"};
    try
    {
        (void)pairwise_correlations(rows, names);
        FAIL() << "expected an exception";
    }
    catch (std::invalid_argument const& e)
    {
        EXPECT_NE(std::string(e.what()).find("Cd"), std::string::npos);
    }
    EXPECT_THROW(pairwise_correlations(std::vector<ElementVector>{{1, 2}, {2, 3}}),
                 std::invalid_argument);
}

TEST(SignFlips, AllPositiveNeedsNone)
{
    SquareMatrix c = SquareMatrix::identity(3);
    c(0, 1) = c(1, 0) = 0.5;
    c(0, 2) = c(2, 0) = 0.2;
    c(1, 2) = c(2, 1) = 0.1;
    EXPECT_EQ(suggest_sign_flips(c).count(), 0u);
}

TEST(SignFlips, NegativePairFlipsSecond)
{
    SquareMatrix c = SquareMatrix::identity(2);
    c(0, 1) = c(1, 0) = -0.9;
    auto const mask = suggest_sign_flips(c);
    EXPECT_FALSE(mask.flipped(0));
    EXPECT_TRUE(mask.flipped(1));
}

TEST(SignFlips, PollutionPattern)
{
    // Pb, Cd, Zn, S with Cd and Zn moving against Pb and S.
    double const r[4][4] = {{1.0, -0.4, -0.6, 0.27},
                            {-0.4, 1.0, 0.48, -0.06},
                            {-0.6, 0.48, 1.0, -0.3},
                            {0.27, -0.06, -0.3, 1.0}};
    SquareMatrix c(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            c(i, j) = r[i][j];
    auto const mask = suggest_sign_flips(c);
    EXPECT_EQ(mask, SignFlipMask(std::vector<bool>{false, true, true, false}));
    EXPECT_EQ(count_nonnegative_pairs(c, mask), 6u);
}

TEST(SignFlips, MaskHelpers)
{
    SignFlipMask m(std::vector<bool>{true, false, true});
    EXPECT_EQ(m.count(), 2u);
    EXPECT_EQ(m.complement(), SignFlipMask(std::vector<bool>{false, true, false}));
    std::vector<double> v{1, 2, 3};
    EXPECT_EQ(m.apply(v), (ElementVector{-1, 2, -3}));
}
