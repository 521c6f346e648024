#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetrss/designs.hpp"
#include "posetrss/matrix.hpp"

namespace posetrss {

struct VariableEstimate
{
    double mu_hat = 0.0;
    std::optional<double> var_hat;  //!< absent when it cannot be formed
};

inline constexpr char const* kWarnVarianceNeedsTwo
    = "variance_needs_two_per_stratum";

struct EstimateReport
{
    DesignKind design = DesignKind::Srs;
    std::vector<VariableEstimate> variables;  //!< one per target column
    std::vector<std::size_t> sample_sizes;    //!< per stratum (or total for SRS)
    //! Set when CPOR reports the RPOR variance estimator as a conservative
    //! stand-in.
    bool conservative_variance = false;
    std::vector<std::string> warnings;
};

/*!
 * MVSR estimator: the unweighted mean of the stratum sample means, with the
 * variance estimator
 *   (K-1)/(m(mK-1)) sum_h s_h^2/n + 1/(m(mK-1)) sum_h (xbar_h - mu_hat)^2.
 * Requires equal n per stratum; var_hat is absent when n < 2.
 */
EstimateReport estimate_mvsr(StratifiedPopulation const& pop,
                             StratumLists const& samples);

/*!
 * CPOR estimator sum_h W_h xbar_h with W_h = K_h / (K m); empty strata carry
 * zero weight. The variance is the RPOR form evaluated with n = n_total / m
 * over strata with at least two draws, flagged conservative.
 */
EstimateReport estimate_cpor(StratifiedPopulation const& pop,
                             StratumLists const& samples,
                             Allocation const& alloc);

/*!
 * RPOR estimator: unweighted mean of stratum sample means, with
 *   1/(nm(Km-1)) [sum_h sum_i (x - mu_hat)^2 + (K-n) sum_h s_h^2].
 */
EstimateReport estimate_rpor(StratifiedPopulation const& pop,
                             StratumLists const& samples);

EstimateReport estimate(StratifiedPopulation const& pop,
                        StratumLists const& samples, Allocation const& alloc);

// Sample mean with variance estimate s^2 / N (absent for N = 1).
EstimateReport srs_baseline(std::span<const double> values);

//---------------------------------------------------------------------------//
// Theoretical MVSR variance
//---------------------------------------------------------------------------//

struct ModelParams
{
    std::vector<double> mu;
    std::vector<double> sigma;
    SquareMatrix rho;
    //! Means of the order statistics of variable 0 within a set (mu_(h)).
    std::optional<std::vector<double>> stratum_means;
    //! Optional concomitant stratum means mu_[h]^j, indexed [j][h]. When
    //! absent, variable j uses the linear-regression link to variable 0:
    //!   mu_[h]^j - mu^j = rho_0j (sigma_j / sigma_0) (mu_(h) - mu^0).
    std::optional<std::vector<std::vector<double>>> concomitant_means;

    void validate() const;
};

/*!
 * V(mu_hat^j) = (1/nm) (sigma_j^2 - ((1 - n/K)/m) sum_h (mu_[h]^j - mu^j)^2)
 * for every variable. Throws if the stratum means are missing.
 */
std::vector<double> theoretical_variance_mvsr(ModelParams const& params,
                                              std::size_t m, std::size_t K,
                                              std::size_t n);

// E[Z_(h:m)] for a standard normal sample of size m, by adaptive
// Gauss-Kronrod quadrature of the order-statistic density.
std::vector<double> normal_order_statistic_means(std::size_t m);

}  // namespace posetrss
