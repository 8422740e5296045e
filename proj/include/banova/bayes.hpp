#pragma once

#include <vector>

#include <json.hpp>

#include "banova/dataset.hpp"

namespace banova {

// Normal-inverse-gamma parameters for a univariate N(mu, sigma2) model:
// mu | sigma2 ~ N(mu0, sigma2 / tau), sigma2 ~ InvGamma(u, v).  Exact zeros
// in (tau, u, v) encode the improper invariant-prior limits.
struct NIGParams {
    double mu0 = 0.0;
    double tau = 0.0;
    double u = 0.0;
    double v = 0.0;

    bool proper() const noexcept { return tau > 0.0 && u > 0.0 && v > 0.0; }
};

enum class NigPreset {
    JeffreysIndependence, // p(mu, sigma2) ~ (sigma2)^-1;  sigma2 ~ InvGamma(0, 0)
    JeffreysMultivariate, // p(mu, sigma2) ~ (sigma2)^-3/2; sigma2 ~ InvGamma(1/2, 0)
};

NIGParams nig_preset(NigPreset preset);

struct NigDensity {
    double value = 0.0;
    bool normalized = false; // false: unnormalized kernel (improper parameters)
};

// Joint density p(mu, sigma2) of the NIG family; proper parameters give the
// normalized density, improper ones the kernel with normalized = false.
NigDensity nig_density(const NIGParams& p, double mu, double sigma2);

// Conjugate refresh from a batch summarized by (n, ybar, ss = sum (y-ybar)^2).
NIGParams nig_update(const NIGParams& prior, int n, double ybar, double ss);

// The 8 hyperparameters of the normal-inverse-gamma-inverse-gamma prior on
// (alpha_i, sigma2_alpha, sigma2_eps), with sigma2_alpha_eps =
// sigma2_alpha + kappa_eps * sigma2_eps carrying the second IG component.
struct Hyperparameters {
    double alpha0 = 0.0;
    double tau_alpha = 1.0;
    double tau_eps = 0.0;
    double kappa_eps = 0.0;
    double u_alpha = 0.0;
    double v_alpha = 0.0;
    double u_eps = 0.0;
    double v_eps = 0.0;

    // Direct (factored) sampling needs tau_eps = 0 and
    // kappa_eps = tau_alpha / n_reps for the target data.
    bool conjugate_for(int n_reps) const noexcept {
        return tau_eps == 0.0 && n_reps > 0 && kappa_eps == tau_alpha / n_reps;
    }
};

void to_json(nlohmann::json& j, const Hyperparameters& h);
void from_json(const nlohmann::json& j, Hyperparameters& h);

// Invariant IG priors, tau_alpha = 1, alpha0 = grand mean,
// kappa_eps = tau_alpha / n_reps.
Hyperparameters default_hyperparameters(const BalancedOneWayData& data);

struct IgParams {
    double shape = 0.0; // u
    double scale = 0.0; // v
};

// Conjugate one-way posterior, factored for direct sampling:
// sigma2_eps ~ InvGamma(ig_eps), sigma2_alpha_eps ~ InvGamma(ig_alpha_eps),
// sigma2_alpha = sigma2_alpha_eps - kappa_eps * sigma2_eps (mass at 0 when
// negative), then alpha_i | variances is normal with precision
// tau_alpha / sigma2_alpha + n_reps / sigma2_eps.
struct OneWayPosterior {
    std::vector<double> group_means; // alpha_hat_i, first-appearance order
    double alpha0 = 0.0;
    double tau_alpha = 1.0;
    double kappa_eps = 0.0;
    IgParams ig_alpha_eps;
    IgParams ig_eps;
    int n_groups = 0;
    int n_reps = 0;

    bool proper() const noexcept {
        return ig_eps.shape > 0.0 && ig_eps.scale > 0.0 && ig_alpha_eps.shape > 0.0 &&
               ig_alpha_eps.scale > 0.0;
    }
};

// Conjugate update: ig_eps = (u_eps + (n - n_I)/2, v_eps + SSE/2),
// ig_alpha_eps = (u_alpha + n_I/2, v_alpha + tau_alpha/2 * sum (ahat_i - alpha0)^2).
// Requires h.conjugate_for(data.n_reps()).
OneWayPosterior posterior_update(const Hyperparameters& h, const BalancedOneWayData& data);

// Unnormalized log posterior kernels of the general (not necessarily
// conjugate) family; density evaluators only, used for cross-checks.
double log_kernel_sigma2_eps(const Hyperparameters& h, const BalancedOneWayData& data,
                             double sigma2_eps);
double log_kernel_sigma2_alpha(const Hyperparameters& h, const BalancedOneWayData& data,
                               double sigma2_alpha, double sigma2_eps);

} // namespace banova
