#include "posetrss/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace posetrss {

// GCC/Clang extension; exact 64x64 -> 128-bit products.
__extension__ using u128 = unsigned __int128;

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Variant 4 of Stafford's mixers, used only for gamma derivation.
constexpr std::uint64_t mix64_variant4(std::uint64_t z)
{
    z = (z ^ (z >> 33)) * 0x62a9d9ed799705f5ull;
    return (z ^ (z >> 28)) * 0xcb24d0a5c88c35b3ull;
}

std::uint64_t mix_gamma(std::uint64_t z)
{
    z = (mix64_variant4(z) >> 32) | 1ull;
    z = z | (mix64_variant4(z) << 1) | 1ull;
    if (std::popcount(z ^ (z >> 1)) < 24)
        z ^= 0xaaaaaaaaaaaaaaaaull;
    return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed)
    : seed_(mix64(seed + kGoldenGamma)), gamma_(mix_gamma(seed ^ kGoldenGamma))
{
}

CounterRng CounterRng::split(std::uint64_t id) const
{
    std::uint64_t const h = mix64(id * kGoldenGamma + 0x632be59bd9b4e019ull);
    std::uint64_t const child_seed = mix64(seed_ ^ h) + gamma_;
    std::uint64_t const child_gamma = mix_gamma(child_seed ^ mix64(gamma_ + h));
    return CounterRng(child_seed, child_gamma);
}

CounterRng CounterRng::split(std::initializer_list<std::uint64_t> path) const
{
    CounterRng out = *this;
    for (auto id : path)
        out = out.split(id);
    return out;
}

CounterRng::result_type CounterRng::operator()()
{
    ++counter_;
    return mix64(seed_ + counter_ * gamma_);
}

double CounterRng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("CounterRng::below: bound must be positive");
    // Lemire's multiply-shift with rejection.
    u128 product
        = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound)
    {
        std::uint64_t const threshold = (0 - bound) % bound;
        while (low < threshold)
        {
            product = static_cast<u128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::pair<double, double> CounterRng::normal_pair()
{
    // 1 - u keeps the log argument in (0, 1].
    double const u1 = 1.0 - this->uniform();
    double const u2 = this->uniform();
    double const radius = std::sqrt(-2.0 * std::log(u1));
    double const angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace posetrss
