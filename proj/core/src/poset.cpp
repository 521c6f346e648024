#include "posetrss/poset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace posetrss {

std::string_view to_string(Ordering o)
{
    switch (o)
    {
        case Ordering::Below: return "below";
        case Ordering::Above: return "above";
        case Ordering::Equal: return "equal";
        case Ordering::Incomparable: return "incomparable";
    }
    return "?";
}

Ordering compare(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
    {
        throw DimensionMismatch("compare: vectors of length "
                                + std::to_string(a.size()) + " and "
                                + std::to_string(b.size()));
    }
    bool any_less = false;
    bool any_greater = false;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
        if (a[j] < b[j])
            any_less = true;
        else if (a[j] > b[j])
            any_greater = true;
    }
    if (any_less && any_greater)
        return Ordering::Incomparable;
    if (any_less)
        return Ordering::Below;
    if (any_greater)
        return Ordering::Above;
    return Ordering::Equal;
}

//---------------------------------------------------------------------------//
// ElementSet
//---------------------------------------------------------------------------//

ElementSet::ElementSet(std::vector<ElementVector> elements,
                       std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels))
{
    if (elements_.size() < 2)
        throw std::invalid_argument("ElementSet: need at least 2 elements");
    std::size_t const r = elements_.front().size();
    if (r == 0)
        throw std::invalid_argument("ElementSet: elements need at least one value");
    for (std::size_t i = 0; i < elements_.size(); ++i)
    {
        if (elements_[i].size() != r)
        {
            throw DimensionMismatch("ElementSet: element " + std::to_string(i)
                                    + " has " + std::to_string(elements_[i].size())
                                    + " values, expected " + std::to_string(r));
        }
        for (double v : elements_[i])
        {
            if (!std::isfinite(v))
            {
                throw std::invalid_argument("ElementSet: element "
                                            + std::to_string(i)
                                            + " has a non-finite value");
            }
        }
    }
    if (labels_.empty())
    {
        labels_.reserve(elements_.size());
        for (std::size_t i = 0; i < elements_.size(); ++i)
            labels_.push_back("e" + std::to_string(i + 1));
    }
    else if (labels_.size() != elements_.size())
    {
        throw std::invalid_argument("ElementSet: label count does not match "
                                    "element count");
    }
    else
    {
        auto sorted = labels_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("ElementSet: duplicate label");
    }
}

ElementSet ElementSet::project(std::span<const std::size_t> columns) const
{
    std::vector<ElementVector> out;
    out.reserve(elements_.size());
    for (auto const& e : elements_)
    {
        ElementVector v;
        v.reserve(columns.size());
        for (auto c : columns)
        {
            if (c >= e.size())
                throw DimensionMismatch("ElementSet::project: column out of range");
            v.push_back(e[c]);
        }
        out.push_back(std::move(v));
    }
    return ElementSet(std::move(out), labels_);
}

//---------------------------------------------------------------------------//
// SignFlipMask
//---------------------------------------------------------------------------//

std::size_t SignFlipMask::count() const
{
    return static_cast<std::size_t>(std::count(flips_.begin(), flips_.end(), true));
}

SignFlipMask SignFlipMask::complement() const
{
    std::vector<bool> out(flips_.size());
    for (std::size_t j = 0; j < flips_.size(); ++j)
        out[j] = !flips_[j];
    return SignFlipMask(std::move(out));
}

ElementVector SignFlipMask::apply(std::span<const double> values) const
{
    if (values.size() != flips_.size())
    {
        throw DimensionMismatch("SignFlipMask: mask has length "
                                + std::to_string(flips_.size()) + ", vector has "
                                + std::to_string(values.size()));
    }
    ElementVector out(values.begin(), values.end());
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        if (flips_[j])
            out[j] = -out[j];
    }
    return out;
}

//---------------------------------------------------------------------------//
// Poset
//---------------------------------------------------------------------------//

Poset::Poset(std::size_t m, std::vector<std::uint8_t> relation)
    : m_(m), relation_(std::move(relation))
{
    for (std::size_t i = 0; i < m_; ++i)
    {
        for (std::size_t j = 0; j < m_; ++j)
        {
            if (!below(i, j))
                continue;
            bool covered = true;
            for (std::size_t k = 0; k < m_ && covered; ++k)
            {
                if (below(i, k) && below(k, j))
                    covered = false;
            }
            if (covered)
                covers_.emplace_back(i, j);
        }
    }
}

Poset Poset::from_relation(std::size_t m, std::vector<std::uint8_t> relation)
{
    if (m == 0)
        throw std::invalid_argument("Poset: empty ground set");
    if (relation.size() != m * m)
        throw std::invalid_argument("Poset: relation must be m*m");
    for (auto& r : relation)
        r = r != 0 ? 1 : 0;
    auto at = [&](std::size_t i, std::size_t j) { return relation[i * m + j] != 0; };
    for (std::size_t i = 0; i < m; ++i)
    {
        if (at(i, i))
            throw std::invalid_argument("Poset: relation is not irreflexive");
        for (std::size_t j = i + 1; j < m; ++j)
        {
            if (at(i, j) && at(j, i))
                throw std::invalid_argument("Poset: relation is not antisymmetric");
        }
    }
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t k = 0; k < m; ++k)
        {
            if (!at(i, k))
                continue;
            for (std::size_t j = 0; j < m; ++j)
            {
                if (at(k, j) && !at(i, j))
                {
                    throw std::invalid_argument(
                        "Poset: relation is not transitive ("
                        + std::to_string(i) + " < " + std::to_string(k) + " < "
                        + std::to_string(j) + ")");
                }
            }
        }
    }
    return Poset(m, std::move(relation));
}

Poset Poset::from_edges(std::size_t m, std::span<const Edge> edges)
{
    std::vector<std::uint8_t> rel(m * m, 0);
    for (auto [i, j] : edges)
    {
        if (i >= m || j >= m)
            throw std::invalid_argument("Poset: edge endpoint out of range");
        rel[i * m + j] = 1;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i * m + k])
                for (std::size_t j = 0; j < m; ++j)
                    if (rel[k * m + j])
                        rel[i * m + j] = 1;
    for (std::size_t i = 0; i < m; ++i)
    {
        if (rel[i * m + i])
            throw std::invalid_argument("Poset: edges contain a cycle");
    }
    return from_relation(m, std::move(rel));
}

Poset Poset::chain(std::size_t m)
{
    std::vector<std::uint8_t> rel(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            rel[i * m + j] = 1;
    return from_relation(m, std::move(rel));
}

Poset Poset::antichain(std::size_t m)
{
    return from_relation(m, std::vector<std::uint8_t>(m * m, 0));
}

std::vector<Poset::Edge> Poset::relation_pairs() const
{
    std::vector<Edge> out;
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j)
            if (below(i, j))
                out.emplace_back(i, j);
    return out;
}

Poset Poset::dual() const
{
    std::vector<std::uint8_t> rel(m_ * m_, 0);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j)
            rel[j * m_ + i] = relation_[i * m_ + j];
    return Poset(m_, std::move(rel));
}

Poset build_poset(ElementSet const& set, SignFlipMask const& mask)
{
    if (mask.size() != set.dimension())
    {
        throw DimensionMismatch("build_poset: mask has length "
                                + std::to_string(mask.size()) + ", elements have "
                                + std::to_string(set.dimension()) + " values");
    }
    std::size_t const m = set.size();
    std::vector<ElementVector> view;
    view.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        view.push_back(mask.apply(set[i]));

    std::vector<std::uint8_t> rel(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = i + 1; j < m; ++j)
        {
            switch (compare(view[i], view[j]))
            {
                case Ordering::Below: rel[i * m + j] = 1; break;
                case Ordering::Above: rel[j * m + i] = 1; break;
                default: break;
            }
        }
    }
    return Poset::from_relation(m, std::move(rel));
}

Poset build_poset(ElementSet const& set)
{
    return build_poset(set, SignFlipMask(set.dimension()));
}

//---------------------------------------------------------------------------//
// Correlations and sign flips
//---------------------------------------------------------------------------//

SquareMatrix pairwise_correlations(std::span<const ElementVector> rows,
                                   std::span<const std::string> names)
{
    if (rows.size() < 3)
        throw std::invalid_argument("pairwise_correlations: need at least 3 rows");
    std::size_t const r = rows.front().size();
    if (r == 0)
        throw std::invalid_argument("pairwise_correlations: no columns");
    for (auto const& row : rows)
    {
        if (row.size() != r)
            throw DimensionMismatch("pairwise_correlations: ragged rows");
    }
    auto column_name = [&](std::size_t j) {
        return j < names.size() ? "'" + names[j] + "'" : std::to_string(j);
    };

    auto const n = static_cast<double>(rows.size());
    std::vector<double> mean(r, 0.0);
    for (auto const& row : rows)
        for (std::size_t j = 0; j < r; ++j)
            mean[j] += row[j];
    for (auto& v : mean)
        v /= n;

    SquareMatrix cross(r);
    for (auto const& row : rows)
    {
        for (std::size_t a = 0; a < r; ++a)
        {
            double const da = row[a] - mean[a];
            for (std::size_t b = a; b < r; ++b)
                cross(a, b) += da * (row[b] - mean[b]);
        }
    }
    for (std::size_t j = 0; j < r; ++j)
    {
        if (!(cross(j, j) > 0.0))
        {
            throw std::invalid_argument("pairwise_correlations: column "
                                        + column_name(j) + " is constant");
        }
    }
    SquareMatrix corr = SquareMatrix::identity(r);
    for (std::size_t a = 0; a < r; ++a)
    {
        for (std::size_t b = a + 1; b < r; ++b)
        {
            double c = cross(a, b) / std::sqrt(cross(a, a) * cross(b, b));
            c = std::clamp(c, -1.0, 1.0);
            corr(a, b) = c;
            corr(b, a) = c;
        }
    }
    return corr;
}

std::size_t count_nonnegative_pairs(SquareMatrix const& corr,
                                    SignFlipMask const& mask)
{
    if (mask.size() != corr.size())
        throw DimensionMismatch("count_nonnegative_pairs: mask/matrix size");
    std::size_t count = 0;
    for (std::size_t a = 0; a < corr.size(); ++a)
    {
        for (std::size_t b = a + 1; b < corr.size(); ++b)
        {
            double c = corr(a, b);
            if (mask.flipped(a) != mask.flipped(b))
                c = -c;
            if (c >= 0.0)
                ++count;
        }
    }
    return count;
}

SignFlipMask suggest_sign_flips(SquareMatrix const& corr)
{
    std::size_t const r = corr.size();
    SignFlipMask mask(r);
    std::size_t current = count_nonnegative_pairs(corr, mask);
    // Each accepted flip strictly increases a bounded count, so this ends.
    while (true)
    {
        std::size_t best_gain = 0;
        std::size_t best_var = r;
        for (std::size_t j = 0; j < r; ++j)
        {
            SignFlipMask trial = mask;
            trial.set(j, !trial.flipped(j));
            std::size_t const score = count_nonnegative_pairs(corr, trial);
            if (score > current && score - current > best_gain)
            {
                best_gain = score - current;
                best_var = j;
            }
        }
        if (best_var == r)
            break;
        mask.set(best_var, !mask.flipped(best_var));
        current += best_gain;
    }
    if (r > 0 && mask.flipped(0))
        mask = mask.complement();
    return mask;
}

}  // namespace posetrss
