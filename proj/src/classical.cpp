#include "banova/classical.hpp"

#include "banova/error.hpp"
#include "banova/kernels.hpp"
#include "banova/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace banova {

namespace {

struct SuffStats {
    double sse = 0.0;
    double ssa = 0.0;
    double grand_mean = 0.0;
    int n_i = 0;
    int n_j = 0;

    int n() const { return n_i * n_j; }
};

SuffStats suff_stats(const BalancedOneWayData& data) {
    const GroupSummary s = summarize(data);
    SuffStats st;
    st.n_i = data.n_groups();
    st.n_j = data.n_reps();
    st.grand_mean = s.grand_mean;
    for (int i = 0; i < st.n_i; ++i)
        st.sse += kernels::sum_sq_dev(data.group(i), s.group_means[static_cast<std::size_t>(i)]);
    st.ssa = st.n_j * kernels::sum_sq_dev(s.group_means, s.grand_mean);
    return st;
}

double loglik_stats(const SuffStats& st, double mu, double sigma2_alpha, double sigma2_eps) {
    if (!(sigma2_eps > 0.0))
        raise(ErrorKind::DomainError, "loglik requires sigma2_eps > 0");
    if (!(sigma2_alpha >= 0.0))
        raise(ErrorKind::DomainError, "loglik requires sigma2_alpha >= 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double omega = sigma2_eps + st.n_j * sigma2_alpha;
    const double mean_quad = st.ssa + st.n() * (st.grand_mean - mu) * (st.grand_mean - mu);
    return -0.5 * ((st.n() - st.n_i) * std::log(two_pi * sigma2_eps) + st.sse / sigma2_eps +
                   st.n_i * std::log(two_pi * omega) + mean_quad / omega);
}

VarCompEstimate ml_from_stats(const SuffStats& st) {
    VarCompEstimate est;
    est.method = VarCompMethod::ML;
    est.mu_hat = st.grand_mean;
    const double s2e = st.sse / (st.n() - st.n_i);
    const double omega = st.ssa / st.n_i;
    if (omega > s2e) {
        est.sigma2_eps_hat = s2e;
        est.sigma2_alpha_hat = (omega - s2e) / st.n_j;
    } else {
        // Constrained optimum sits on sigma2_alpha = 0: pooled iid refit.
        est.sigma2_eps_hat = (st.sse + st.ssa) / st.n();
        est.sigma2_alpha_hat = 0.0;
        est.boundary_hit = true;
    }
    return est;
}

} // namespace

SumsOfSquares decompose(const BalancedOneWayData& data) {
    const SuffStats st = suff_stats(data);
    SumsOfSquares ss;
    ss.sse = st.sse;
    ss.ssa = st.ssa;
    ss.sst = kernels::sum_sq_dev(data.values, st.grand_mean);
    ss.df_a = st.n_i - 1;
    ss.df_e = st.n() - st.n_i;
    return ss;
}

ClassicalTable fixed_effects_table(const BalancedOneWayData& data) {
    const SumsOfSquares ss = decompose(data);
    if (ss.sse == 0.0)
        raise(ErrorKind::DegenerateError,
              "SSE = 0 (no within-group variation); the F ratio is undefined");
    const double msa = ss.ssa / ss.df_a;
    const double mse = ss.sse / ss.df_e;
    const double f = msa / mse;
    const double p = specfun::f_upper_tail(f, ss.df_a, ss.df_e);

    ClassicalTable table;
    table.rows[0] = {"Factor", ss.df_a, ss.ssa, msa, f, p};
    table.rows[1] = {"Errors", ss.df_e, ss.sse, mse, std::nullopt, std::nullopt};
    return table;
}

VarCompEstimate mom_varcomp(const BalancedOneWayData& data) {
    const SuffStats st = suff_stats(data);
    const double msa = st.ssa / (st.n_i - 1);
    const double mse = st.sse / (st.n() - st.n_i);
    VarCompEstimate est;
    est.method = VarCompMethod::MoM;
    est.mu_hat = st.grand_mean;
    est.sigma2_eps_hat = mse;
    const double raw = (msa - mse) / st.n_j;
    if (raw >= 0.0) {
        est.sigma2_alpha_hat = raw;
    } else {
        est.sigma2_alpha_hat = 0.0;
        est.boundary_hit = true;
    }
    return est;
}

double loglik(const BalancedOneWayData& data, double mu, double sigma2_alpha, double sigma2_eps) {
    return loglik_stats(suff_stats(data), mu, sigma2_alpha, sigma2_eps);
}

VarCompEstimate ml_varcomp(const BalancedOneWayData& data) {
    return ml_from_stats(suff_stats(data));
}

GridSpec default_likelihood_grid(const BalancedOneWayData& data, std::size_t n_alpha,
                                 std::size_t n_eps) {
    const SuffStats st = suff_stats(data);
    const VarCompEstimate ml = ml_from_stats(st);
    const double sd_eps = std::sqrt(std::max(ml.sigma2_eps_hat, 1e-12));
    double sd_alpha = std::sqrt(ml.sigma2_alpha_hat);
    if (sd_alpha == 0.0)
        sd_alpha = std::sqrt(std::max(st.ssa / st.n_i, ml.sigma2_eps_hat) / st.n_j + 1e-12);
    GridSpec spec;
    spec.sigma_alpha = {sd_alpha / 4.0, sd_alpha * 4.0, n_alpha};
    spec.sigma_eps = {sd_eps / 4.0, sd_eps * 4.0, n_eps};
    return spec;
}

RegionGrid relative_likelihood_grid(const BalancedOneWayData& data, const GridSpec& grid,
                                    const std::vector<double>& levels) {
    if (grid.sigma_alpha.n < 2 || grid.sigma_eps.n < 2)
        raise(ErrorKind::DomainError, "grid needs at least 2 points per axis");
    if (!(grid.sigma_alpha.lo > 0.0) || !(grid.sigma_eps.lo > 0.0) ||
        !(grid.sigma_alpha.hi > grid.sigma_alpha.lo) || !(grid.sigma_eps.hi > grid.sigma_eps.lo))
        raise(ErrorKind::DomainError, "grid axes must be positive and increasing");

    const SuffStats st = suff_stats(data);
    const VarCompEstimate ml = ml_from_stats(st);
    const double max_ll =
        loglik_stats(st, ml.mu_hat, ml.sigma2_alpha_hat, ml.sigma2_eps_hat);

    RegionGrid out;
    out.kind = RegionKind::RelativeLikelihood;
    auto linspace = [](const AxisSpec& axis) {
        std::vector<double> pts(axis.n);
        const double step = (axis.hi - axis.lo) / static_cast<double>(axis.n - 1);
        for (std::size_t k = 0; k < axis.n; ++k)
            pts[k] = axis.lo + step * static_cast<double>(k);
        return pts;
    };
    out.sigma_alpha_axis = linspace(grid.sigma_alpha);
    out.sigma_eps_axis = linspace(grid.sigma_eps);
    out.values.resize(grid.sigma_alpha.n * grid.sigma_eps.n);

    // mu profiles out analytically at the grand mean for every cell.
    for (std::size_t ia = 0; ia < out.sigma_alpha_axis.size(); ++ia) {
        const double s2a = out.sigma_alpha_axis[ia] * out.sigma_alpha_axis[ia];
        for (std::size_t ie = 0; ie < out.sigma_eps_axis.size(); ++ie) {
            const double s2e = out.sigma_eps_axis[ie] * out.sigma_eps_axis[ie];
            out.values[ia * out.sigma_eps_axis.size() + ie] =
                loglik_stats(st, st.grand_mean, s2a, s2e) - max_ll;
        }
    }

    out.contour_levels.reserve(levels.size());
    for (const double level : levels) {
        if (!(level > 0.0) || !(level < 1.0))
            raise(ErrorKind::DomainError, "confidence level must lie in (0,1)");
        out.contour_levels.emplace_back(level, -0.5 * specfun::chi2_quantile(level, 2));
    }
    return out;
}

} // namespace banova
