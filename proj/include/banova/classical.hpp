#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "banova/dataset.hpp"
#include "banova/region.hpp"

namespace banova {

struct SumsOfSquares {
    double sst = 0.0;
    double ssa = 0.0;
    double sse = 0.0;
    int df_a = 0; // n_I - 1
    int df_e = 0; // n - n_I
};

struct ClassicalRow {
    std::string source;
    int df = 0;
    double sum_sq = 0.0;
    double mean_sq = 0.0;
    std::optional<double> f_value;
    std::optional<double> p_value;
};

struct ClassicalTable {
    std::array<ClassicalRow, 2> rows; // factor, errors
};

enum class VarCompMethod { MoM, ML };

struct VarCompEstimate {
    double mu_hat = 0.0;
    double sigma2_alpha_hat = 0.0;
    double sigma2_eps_hat = 0.0;
    VarCompMethod method = VarCompMethod::MoM;
    bool boundary_hit = false; // unconstrained estimate was negative, truncated to 0
};

SumsOfSquares decompose(const BalancedOneWayData& data);

// Fixed-effects table with F = MSA/MSE and p = Pr(F_{df_a, df_e} > F).
// SSE = 0 leaves F undefined and is reported as DegenerateError.
ClassicalTable fixed_effects_table(const BalancedOneWayData& data);

// Method-of-moments components: sigma2_eps = MSE,
// sigma2_alpha = max(0, (MSA - MSE) / n_J).
VarCompEstimate mom_varcomp(const BalancedOneWayData& data);

// Exact balanced-design log-likelihood of (mu, sigma2_alpha, sigma2_eps)
// under the compound-symmetric covariance: within-group contrasts are iid
// N(0, sigma2_eps) and group means are iid N(mu, omega / n_J) with
// omega = sigma2_eps + n_J * sigma2_alpha.
double loglik(const BalancedOneWayData& data, double mu, double sigma2_alpha, double sigma2_eps);

// Maximum likelihood components.  Off the boundary the optimum separates as
// sigma2_eps = SSE/(n - n_I), omega = SSA/n_I; when that gives a negative
// sigma2_alpha the model refits as pooled iid with sigma2_eps = SST/n.
VarCompEstimate ml_varcomp(const BalancedOneWayData& data);

// Relative profile log-likelihood surface over (sigma_alpha, sigma_eps) in
// sd units; cell value = loglik at the cell (mu profiled out) minus the ML
// maximum.  Thresholds are -chi2_quantile(level, 2)/2.
RegionGrid relative_likelihood_grid(const BalancedOneWayData& data, const GridSpec& grid,
                                    const std::vector<double>& levels);

// Axis ranges bracketing the ML point, used when the caller gives counts only.
GridSpec default_likelihood_grid(const BalancedOneWayData& data, std::size_t n_alpha = 100,
                                 std::size_t n_eps = 100);

} // namespace banova
