#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <utility>

namespace posetrss {

//---------------------------------------------------------------------------//
/*!
 * \brief Splittable counter-based random stream.
 *
 * Each stream is a (seed, gamma) pair; the i-th output is the SplitMix64
 * finalizer applied to seed + i * gamma. Child streams are derived
 * deterministically from a parent key and an integer id, following the
 * SplittableRandom construction (Steele, Lea and Flood, 2014), so any
 * substream can be reconstructed from the root seed and its id path without
 * touching shared state.
 */
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed);

    // Child stream for the given id; the parent is not advanced.
    [[nodiscard]] CounterRng split(std::uint64_t id) const;
    // Child stream along an id path: split(a).split(b)...
    [[nodiscard]] CounterRng split(std::initializer_list<std::uint64_t> path) const;

    result_type operator()();

    // Uniform double in [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    // Fair coin.
    bool coin() { return ((*this)() >> 63) != 0; }
    // Two independent standard normals (Box-Muller, fixed consumption).
    std::pair<double, double> normal_pair();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    std::uint64_t counter() const { return counter_; }

  private:
    CounterRng(std::uint64_t seed, std::uint64_t gamma)
        : seed_(seed), gamma_(gamma)
    {
    }

    std::uint64_t seed_;
    std::uint64_t gamma_;
    std::uint64_t counter_ = 0;
};

}  // namespace posetrss
