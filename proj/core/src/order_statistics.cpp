#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "posetrss/estimators.hpp"

namespace posetrss {

std::vector<double> normal_order_statistic_means(std::size_t m)
{
    if (m == 0)
        throw std::invalid_argument("normal_order_statistic_means: m must be >= 1");
    using boost::math::quadrature::gauss_kronrod;
    auto const md = static_cast<double>(m);
    std::vector<double> out;
    out.reserve(m);
    for (std::size_t h = 1; h <= m; ++h)
    {
        auto const hd = static_cast<double>(h);
        // log of m! / ((h-1)! (m-h)!)
        double const log_coef
            = std::lgamma(md + 1.0) - std::lgamma(hd) - std::lgamma(md - hd + 1.0);
        auto density = [&](double z) {
            double const cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
            double const sf = 0.5 * std::erfc(z / std::numbers::sqrt2);
            double const log_pdf = -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
            double log_f = log_coef + log_pdf;
            if (h > 1)
                log_f += (hd - 1.0) * std::log(cdf);
            if (h < m)
                log_f += (md - hd) * std::log(sf);
            return z * std::exp(log_f);
        };
        double error = 0.0;
        double const value = gauss_kronrod<double, 61>::integrate(
            density, -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), 15, 1e-12, &error);
        out.push_back(value);
    }
    return out;
}

}  // namespace posetrss
