#include "posetrss/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace posetrss {
namespace {

struct StratumStats
{
    std::size_t count = 0;
    double mean = 0.0;
    double sum_sq_dev = 0.0;  //!< sum of squared deviations from the mean

    std::optional<double> sample_variance() const
    {
        if (count < 2)
            return std::nullopt;
        return sum_sq_dev / static_cast<double>(count - 1);
    }
};

StratumStats stats_of(std::vector<RankedRecord> const& sample, std::size_t j)
{
    StratumStats s;
    s.count = sample.size();
    if (s.count == 0)
        return s;
    double sum = 0.0;
    for (auto const& r : sample)
        sum += r.target_values[j];
    s.mean = sum / static_cast<double>(s.count);
    for (auto const& r : sample)
    {
        double const d = r.target_values[j] - s.mean;
        s.sum_sq_dev += d * d;
    }
    return s;
}

std::size_t target_count(StratumLists const& samples)
{
    for (auto const& s : samples)
        if (!s.empty())
            return s.front().target_values.size();
    throw std::invalid_argument("estimator: every stratum sample is empty");
}

// Sum over all sampled values of (x - center)^2.
double sum_sq_about(StratumLists const& samples, std::size_t j, double center)
{
    double out = 0.0;
    for (auto const& s : samples)
        for (auto const& r : s)
            out += (r.target_values[j] - center) * (r.target_values[j] - center);
    return out;
}

std::size_t equal_sample_size(StratifiedPopulation const& pop,
                              StratumLists const& samples, char const* who)
{
    if (samples.size() != pop.m())
        throw std::invalid_argument(std::string(who) + ": need one sample per stratum");
    std::size_t const n = samples.front().size();
    for (auto const& s : samples)
    {
        if (s.size() != n)
            throw std::invalid_argument(std::string(who)
                                        + ": unequal per-stratum sample sizes");
    }
    if (n == 0 || n > pop.K())
        throw std::invalid_argument(std::string(who) + ": need 1 <= n <= K");
    return n;
}

std::vector<std::size_t> sizes_of(StratumLists const& samples)
{
    std::vector<std::size_t> out;
    for (auto const& s : samples)
        out.push_back(s.size());
    return out;
}

}  // namespace

EstimateReport estimate_mvsr(StratifiedPopulation const& pop,
                             StratumLists const& samples)
{
    if (pop.kind() != DesignKind::Mvsr)
        throw std::invalid_argument("estimate_mvsr: population is not MVSR");
    std::size_t const n = equal_sample_size(pop, samples, "estimate_mvsr");
    auto const m = static_cast<double>(pop.m());
    auto const K = static_cast<double>(pop.K());
    auto const nd = static_cast<double>(n);

    EstimateReport report;
    report.design = DesignKind::Mvsr;
    report.sample_sizes = sizes_of(samples);
    if (n < 2)
        report.warnings.emplace_back(kWarnVarianceNeedsTwo);

    std::size_t const targets = target_count(samples);
    for (std::size_t j = 0; j < targets; ++j)
    {
        std::vector<StratumStats> st;
        double mu = 0.0;
        for (auto const& s : samples)
        {
            st.push_back(stats_of(s, j));
            mu += st.back().mean;
        }
        mu /= m;
        VariableEstimate est{mu, std::nullopt};
        if (n >= 2)
        {
            double within = 0.0;
            double between = 0.0;
            for (auto const& s : st)
            {
                within += *s.sample_variance() / nd;
                between += (s.mean - mu) * (s.mean - mu);
            }
            double const denom = m * (m * K - 1.0);
            est.var_hat = std::max(0.0, (K - 1.0) / denom * within + between / denom);
        }
        report.variables.push_back(est);
    }
    return report;
}

EstimateReport estimate_rpor(StratifiedPopulation const& pop,
                             StratumLists const& samples)
{
    if (pop.kind() != DesignKind::Rpor)
        throw std::invalid_argument("estimate_rpor: population is not RPOR");
    std::size_t const n = equal_sample_size(pop, samples, "estimate_rpor");
    auto const m = static_cast<double>(pop.m());
    auto const K = static_cast<double>(pop.K());
    auto const nd = static_cast<double>(n);

    EstimateReport report;
    report.design = DesignKind::Rpor;
    report.sample_sizes = sizes_of(samples);
    if (n < 2)
        report.warnings.emplace_back(kWarnVarianceNeedsTwo);

    std::size_t const targets = target_count(samples);
    for (std::size_t j = 0; j < targets; ++j)
    {
        std::vector<StratumStats> st;
        double mu = 0.0;
        for (auto const& s : samples)
        {
            st.push_back(stats_of(s, j));
            mu += st.back().mean;
        }
        mu /= m;
        VariableEstimate est{mu, std::nullopt};
        if (n >= 2)
        {
            double s2_sum = 0.0;
            for (auto const& s : st)
                s2_sum += *s.sample_variance();
            double const total_ss = sum_sq_about(samples, j, mu);
            est.var_hat = std::max(
                0.0, (total_ss + (K - nd) * s2_sum) / (nd * m * (K * m - 1.0)));
        }
        report.variables.push_back(est);
    }
    return report;
}

EstimateReport estimate_cpor(StratifiedPopulation const& pop,
                             StratumLists const& samples,
                             Allocation const& alloc)
{
    if (pop.kind() != DesignKind::Cpor)
        throw std::invalid_argument("estimate_cpor: population is not CPOR");
    if (samples.size() != pop.m() || alloc.n_h.size() != pop.m())
        throw std::invalid_argument("estimate_cpor: allocation/population mismatch");
    auto const sizes = pop.stratum_sizes();
    for (std::size_t h = 0; h < pop.m(); ++h)
    {
        if (samples[h].size() != alloc.n_h[h])
            throw std::invalid_argument("estimate_cpor: sample size of stratum "
                                        + std::to_string(h + 1)
                                        + " does not match its allocation");
        if (sizes[h] > 0 && alloc.n_h[h] == 0)
            throw std::invalid_argument("estimate_cpor: non-empty stratum "
                                        + std::to_string(h + 1) + " has no sample");
    }
    auto const m = static_cast<double>(pop.m());
    auto const K = static_cast<double>(pop.K());
    auto const total = static_cast<double>(alloc.total());
    double const n_equiv = total / m;

    EstimateReport report;
    report.design = DesignKind::Cpor;
    report.sample_sizes = sizes_of(samples);
    report.conservative_variance = true;

    bool any_variance = false;
    for (auto const& s : samples)
        any_variance = any_variance || s.size() >= 2;
    if (!any_variance)
        report.warnings.emplace_back(kWarnVarianceNeedsTwo);

    std::size_t const targets = target_count(samples);
    for (std::size_t j = 0; j < targets; ++j)
    {
        double mu = 0.0;
        double s2_sum = 0.0;
        for (std::size_t h = 0; h < pop.m(); ++h)
        {
            if (sizes[h] == 0)
                continue;
            auto const st = stats_of(samples[h], j);
            mu += static_cast<double>(sizes[h]) / (K * m) * st.mean;
            if (auto v = st.sample_variance())
                s2_sum += *v;
        }
        VariableEstimate est{mu, std::nullopt};
        if (any_variance)
        {
            double const total_ss = sum_sq_about(samples, j, mu);
            est.var_hat = std::max(0.0, (total_ss + (K - n_equiv) * s2_sum)
                                            / (total * (K * m - 1.0)));
        }
        report.variables.push_back(est);
    }
    return report;
}

EstimateReport estimate(StratifiedPopulation const& pop,
                        StratumLists const& samples, Allocation const& alloc)
{
    switch (pop.kind())
    {
        case DesignKind::Mvsr: return estimate_mvsr(pop, samples);
        case DesignKind::Cpor: return estimate_cpor(pop, samples, alloc);
        case DesignKind::Rpor: return estimate_rpor(pop, samples);
        case DesignKind::Srs: break;
    }
    throw std::invalid_argument("estimate: SRS populations are not stratified");
}

EstimateReport srs_baseline(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("srs_baseline: no values");
    auto const n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values)
        sum += v;
    double const mean = sum / n;
    VariableEstimate est{mean, std::nullopt};
    if (values.size() >= 2)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        est.var_hat = ss / (n - 1.0) / n;
    }
    EstimateReport report;
    report.design = DesignKind::Srs;
    report.variables.push_back(est);
    report.sample_sizes.push_back(values.size());
    if (values.size() < 2)
        report.warnings.emplace_back(kWarnVarianceNeedsTwo);
    return report;
}

//---------------------------------------------------------------------------//

void ModelParams::validate() const
{
    std::size_t const r = mu.size();
    if (r == 0 || sigma.size() != r || rho.size() != r)
        throw std::invalid_argument("ModelParams: mu, sigma, rho sizes disagree");
    for (double s : sigma)
    {
        if (!(s > 0.0))
            throw std::invalid_argument("ModelParams: sigma must be positive");
    }
    for (std::size_t a = 0; a < r; ++a)
    {
        if (rho(a, a) != 1.0)
            throw std::invalid_argument("ModelParams: rho needs a unit diagonal");
        for (std::size_t b = 0; b < r; ++b)
        {
            if (rho(a, b) != rho(b, a) || std::abs(rho(a, b)) > 1.0)
                throw std::invalid_argument("ModelParams: rho must be symmetric "
                                            "with entries in [-1, 1]");
        }
    }
}

std::vector<double> theoretical_variance_mvsr(ModelParams const& params,
                                              std::size_t m, std::size_t K,
                                              std::size_t n)
{
    params.validate();
    if (!params.stratum_means)
        throw std::invalid_argument("theoretical_variance_mvsr: stratum means missing");
    auto const& base = *params.stratum_means;
    if (base.size() != m)
        throw std::invalid_argument("theoretical_variance_mvsr: need m stratum means");
    if (n == 0 || n > K)
        throw std::invalid_argument("theoretical_variance_mvsr: need 1 <= n <= K");

    auto const md = static_cast<double>(m);
    double const fpc = (1.0 - static_cast<double>(n) / static_cast<double>(K)) / md;
    double const scale = 1.0 / (static_cast<double>(n) * md);

    std::vector<double> out;
    for (std::size_t j = 0; j < params.mu.size(); ++j)
    {
        double spread = 0.0;
        for (std::size_t h = 0; h < m; ++h)
        {
            double offset = 0.0;
            if (j == 0)
                offset = base[h] - params.mu[0];
            else if (params.concomitant_means)
                offset = (*params.concomitant_means).at(j).at(h) - params.mu[j];
            else
                offset = params.rho(0, j) * params.sigma[j] / params.sigma[0]
                         * (base[h] - params.mu[0]);
            spread += offset * offset;
        }
        double const sj2 = params.sigma[j] * params.sigma[j];
        out.push_back(scale * (sj2 - fpc * spread));
    }
    return out;
}

}  // namespace posetrss
