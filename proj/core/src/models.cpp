#include "posetrss/models.hpp"

#include <cmath>
#include <stdexcept>

namespace posetrss {
namespace {

void require_rho(double rho)
{
    if (!(std::abs(rho) <= 1.0))
        throw std::invalid_argument("population model: |rho| must be <= 1");
}

void require_sigma(double sigma)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("population model: sigma must be finite and >= 0");
}

}  // namespace

PopulationModel::PopulationModel(Kind kind) : kind_(std::move(kind))
{
    if (auto const* bn = std::get_if<BivariateNormal>(&kind_))
    {
        require_sigma(bn->sigma1);
        require_sigma(bn->sigma2);
        require_rho(bn->rho);
        names_ = {"X1", "X2"};
        means_ = {bn->mu1, bn->mu2};
        variances_ = {bn->sigma1 * bn->sigma1, bn->sigma2 * bn->sigma2};
        if (bn->sigma1 > 0.0 && bn->sigma2 > 0.0)
        {
            SquareMatrix c = SquareMatrix::identity(2);
            c(0, 1) = c(1, 0) = bn->rho;
            correlation_ = c;
        }
    }
    else if (auto const* rl = std::get_if<RegressionLinked>(&kind_))
    {
        std::size_t const r = rl->mu.size();
        if (r == 0 || rl->sigma.size() != r || rl->rho_with_first.size() != r)
            throw std::invalid_argument("regression model: mu, sigma, rho sizes disagree");
        for (std::size_t j = 0; j < r; ++j)
        {
            require_sigma(rl->sigma[j]);
            if (j > 0)
                require_rho(rl->rho_with_first[j]);
            names_.push_back("X" + std::to_string(j + 1));
            means_.push_back(rl->mu[j]);
            variances_.push_back(rl->sigma[j] * rl->sigma[j]);
        }
        bool positive = true;
        for (double s : rl->sigma)
            positive = positive && s > 0.0;
        if (positive)
        {
            // Xj and Xk are correlated only through X1.
            SquareMatrix c = SquareMatrix::identity(r);
            for (std::size_t j = 1; j < r; ++j)
            {
                c(0, j) = c(j, 0) = rl->rho_with_first[j];
                for (std::size_t k = j + 1; k < r; ++k)
                    c(j, k) = c(k, j) = rl->rho_with_first[j] * rl->rho_with_first[k];
            }
            correlation_ = c;
        }
    }
    else
    {
        auto const& er = std::get<EmpiricalRows>(kind_);
        if (er.rows.size() < 2)
            throw std::invalid_argument("empirical model: need at least 2 rows");
        if (er.names.empty())
            throw std::invalid_argument("empirical model: no variables");
        names_ = er.names;
        std::size_t const r = er.names.size();
        auto const nrows = static_cast<double>(er.rows.size());
        means_.assign(r, 0.0);
        variances_.assign(r, 0.0);
        for (auto const& row : er.rows)
        {
            if (row.size() != r)
                throw std::invalid_argument("empirical model: ragged rows");
            for (std::size_t j = 0; j < r; ++j)
            {
                if (!std::isfinite(row[j]))
                    throw std::invalid_argument("empirical model: non-finite value");
                means_[j] += row[j];
            }
        }
        for (auto& v : means_)
            v /= nrows;
        for (auto const& row : er.rows)
            for (std::size_t j = 0; j < r; ++j)
                variances_[j] += (row[j] - means_[j]) * (row[j] - means_[j]);
        for (auto& v : variances_)
            v /= nrows;
        if (er.rows.size() >= 3)
        {
            try
            {
                correlation_ = pairwise_correlations(er.rows, er.names);
            }
            catch (std::invalid_argument const&)
            {
                // A constant column has no correlation; leave it unset.
            }
        }
    }
}

std::size_t PopulationModel::dimension() const
{
    return names_.size();
}

ElementVector PopulationModel::draw(CounterRng& rng) const
{
    if (auto const* bn = std::get_if<BivariateNormal>(&kind_))
    {
        auto [z1, z2] = rng.normal_pair();
        double const x1 = bn->mu1 + bn->sigma1 * z1;
        double const x2 = bn->mu2
                          + bn->sigma2 * (bn->rho * z1 + std::sqrt(1.0 - bn->rho * bn->rho) * z2);
        return {x1, x2};
    }
    if (auto const* rl = std::get_if<RegressionLinked>(&kind_))
    {
        std::size_t const r = rl->mu.size();
        ElementVector out(r);
        auto [z1, spare] = rng.normal_pair();
        out[0] = rl->mu[0] + rl->sigma[0] * z1;
        bool have_spare = true;
        for (std::size_t j = 1; j < r; ++j)
        {
            double eps;
            if (have_spare)
            {
                eps = spare;
                have_spare = false;
            }
            else
            {
                auto [a, b] = rng.normal_pair();
                eps = a;
                spare = b;
                have_spare = true;
            }
            double const rho = rl->rho_with_first[j];
            out[j] = rl->mu[j] + rl->sigma[j] * (rho * z1 + std::sqrt(1.0 - rho * rho) * eps);
        }
        return out;
    }
    auto const& er = std::get<EmpiricalRows>(kind_);
    return er.rows[static_cast<std::size_t>(rng.below(er.rows.size()))];
}

std::vector<ElementSet> generate_sets(PopulationModel const& model, std::size_t m,
                                      std::size_t K, CounterRng& rng)
{
    std::vector<ElementSet> sets;
    sets.reserve(K);
    for (std::size_t i = 0; i < K; ++i)
    {
        std::vector<ElementVector> elements;
        elements.reserve(m);
        for (std::size_t e = 0; e < m; ++e)
            elements.push_back(model.draw(rng));
        sets.emplace_back(std::move(elements));
    }
    return sets;
}

}  // namespace posetrss
