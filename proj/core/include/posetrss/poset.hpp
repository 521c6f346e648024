#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posetrss/matrix.hpp"

namespace posetrss {

//! Values of the R variables of one element.
using ElementVector = std::vector<double>;

enum class Ordering
{
    Below,
    Above,
    Equal,
    Incomparable
};

std::string_view to_string(Ordering o);

class DimensionMismatch : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/*!
 * Componentwise comparison of two element vectors.
 *
 * Below when a <= b in every coordinate and a != b; Above symmetric; Equal
 * when identical; Incomparable otherwise.
 */
Ordering compare(std::span<const double> a, std::span<const double> b);

//---------------------------------------------------------------------------//
/*!
 * \brief A set of m >= 2 elements sharing the same dimension R >= 1.
 *
 * Labels default to "e1", "e2", ... when not supplied.
 */
class ElementSet
{
  public:
    explicit ElementSet(std::vector<ElementVector> elements,
                        std::vector<std::string> labels = {});

    std::size_t size() const { return elements_.size(); }
    std::size_t dimension() const { return elements_.front().size(); }

    std::span<const double> operator[](std::size_t i) const
    {
        return elements_[i];
    }
    std::vector<ElementVector> const& elements() const { return elements_; }
    std::string const& label(std::size_t i) const { return labels_[i]; }
    std::vector<std::string> const& labels() const { return labels_; }

    // Same elements restricted to the given columns, in that order.
    ElementSet project(std::span<const std::size_t> columns) const;

  private:
    std::vector<ElementVector> elements_;
    std::vector<std::string> labels_;
};

//---------------------------------------------------------------------------//
/*!
 * \brief Per-variable sign flips applied before dominance comparison.
 *
 * Flips are a view used only to shape the poset; original values are kept
 * for estimation.
 */
class SignFlipMask
{
  public:
    SignFlipMask() = default;
    explicit SignFlipMask(std::size_t dimension) : flips_(dimension, false) {}
    explicit SignFlipMask(std::vector<bool> flips) : flips_(std::move(flips)) {}

    std::size_t size() const { return flips_.size(); }
    bool flipped(std::size_t j) const { return flips_[j]; }
    void set(std::size_t j, bool value) { flips_[j] = value; }
    std::size_t count() const;
    SignFlipMask complement() const;

    ElementVector apply(std::span<const double> values) const;

    friend bool operator==(SignFlipMask const&, SignFlipMask const&) = default;

  private:
    std::vector<bool> flips_;
};

//---------------------------------------------------------------------------//
/*!
 * \brief Strict partial order over m elements.
 *
 * below(i, j) means element i lies strictly below element j. The relation is
 * validated on construction (irreflexive, antisymmetric, transitive), and the
 * cover edges (transitive reduction) are derived from it.
 */
class Poset
{
  public:
    using Edge = std::pair<std::size_t, std::size_t>;

    // relation is m*m row-major; nonzero at (i, j) means i < j.
    static Poset from_relation(std::size_t m, std::vector<std::uint8_t> relation);
    // Transitive closure of the given edges; throws on a cycle.
    static Poset from_edges(std::size_t m, std::span<const Edge> edges);
    static Poset chain(std::size_t m);
    static Poset antichain(std::size_t m);

    std::size_t size() const { return m_; }
    bool below(std::size_t i, std::size_t j) const
    {
        return relation_[i * m_ + j] != 0;
    }
    bool comparable(std::size_t i, std::size_t j) const
    {
        return below(i, j) || below(j, i);
    }

    std::vector<Edge> const& cover_edges() const { return covers_; }
    std::vector<Edge> relation_pairs() const;
    std::vector<std::uint8_t> const& relation() const { return relation_; }

    // Same poset with every relation reversed.
    Poset dual() const;

    friend bool operator==(Poset const& a, Poset const& b)
    {
        return a.m_ == b.m_ && a.relation_ == b.relation_;
    }

  private:
    Poset(std::size_t m, std::vector<std::uint8_t> relation);

    std::size_t m_ = 0;
    std::vector<std::uint8_t> relation_;
    std::vector<Edge> covers_;
};

// Dominance poset of the (optionally sign-flipped) elements. Identical
// vectors get no edge in either direction.
Poset build_poset(ElementSet const& set, SignFlipMask const& mask);
Poset build_poset(ElementSet const& set);

/*!
 * Pearson correlation matrix of the columns of an N x R data matrix.
 *
 * Requires N >= 3 and no constant column; the error names the offending
 * column (by name when names are given).
 */
SquareMatrix pairwise_correlations(std::span<const ElementVector> rows,
                                   std::span<const std::string> names = {});

// Number of off-diagonal pairs (i < j) whose correlation is non-negative once
// the mask is applied.
std::size_t count_nonnegative_pairs(SquareMatrix const& corr,
                                    SignFlipMask const& mask);

/*!
 * Greedy sign-flip suggestion.
 *
 * Starting from no flips, repeatedly flip the variable giving the largest
 * strict gain in non-negative pairs (lowest index on ties) until no flip
 * helps. Negating every variable leaves all pairwise signs unchanged, so the
 * result is canonicalized to keep variable 0 unflipped.
 */
SignFlipMask suggest_sign_flips(SquareMatrix const& corr);

}  // namespace posetrss
