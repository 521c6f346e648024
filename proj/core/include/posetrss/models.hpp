#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "posetrss/matrix.hpp"
#include "posetrss/poset.hpp"
#include "posetrss/rng.hpp"

namespace posetrss {

//! (X1, X2) bivariate normal. sigma = 0 gives a point mass in that coordinate.
struct BivariateNormal
{
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double rho = 0.0;
};

/*!
 * Normal base variable X1 with the others linked by a linear regression:
 *   Xj = mu_j + rho_1j (sigma_j / sigma_1)(X1 - mu_1) + eps_j,
 * eps_j ~ N(0, sigma_j^2 (1 - rho_1j^2)) independent of X1 and of each other.
 */
struct RegressionLinked
{
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<double> rho_with_first;  //!< entry 0 is ignored
};

//! iid draws (with replacement) from the rows of a data set.
struct EmpiricalRows
{
    std::string source;  //!< where the rows came from, for reports
    std::vector<std::string> names;
    std::vector<ElementVector> rows;
};

class PopulationModel
{
  public:
    using Kind = std::variant<BivariateNormal, RegressionLinked, EmpiricalRows>;

    explicit PopulationModel(Kind kind);

    Kind const& kind() const { return kind_; }
    std::size_t dimension() const;
    std::vector<std::string> const& variable_names() const { return names_; }
    std::vector<double> const& means() const { return means_; }
    //! Population variances (model or empirical with divisor N).
    std::vector<double> const& variances() const { return variances_; }
    //! Correlation matrix; empty for degenerate (zero-variance) variables.
    std::optional<SquareMatrix> const& correlation() const { return correlation_; }
    bool is_empirical() const { return std::holds_alternative<EmpiricalRows>(kind_); }

    ElementVector draw(CounterRng& rng) const;

  private:
    Kind kind_;
    std::vector<std::string> names_;
    std::vector<double> means_;
    std::vector<double> variances_;
    std::optional<SquareMatrix> correlation_;
};

// K sets of m iid draws.
std::vector<ElementSet> generate_sets(PopulationModel const& model, std::size_t m,
                                      std::size_t K, CounterRng& rng);

}  // namespace posetrss
