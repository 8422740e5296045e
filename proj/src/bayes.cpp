#include "banova/bayes.hpp"

#include "banova/error.hpp"
#include "banova/kernels.hpp"
#include "banova/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace banova {

namespace {

double group_mean_quad(const GroupSummary& s, double alpha0) {
    return kernels::sum_sq_dev(s.group_means, alpha0);
}

double within_sse(const BalancedOneWayData& data, const GroupSummary& s) {
    double sse = 0.0;
    for (int i = 0; i < data.n_groups(); ++i)
        sse += kernels::sum_sq_dev(data.group(i), s.group_means[static_cast<std::size_t>(i)]);
    return sse;
}

} // namespace

NIGParams nig_preset(NigPreset preset) {
    switch (preset) {
    case NigPreset::JeffreysIndependence: return {0.0, 0.0, 0.0, 0.0};
    case NigPreset::JeffreysMultivariate: return {0.0, 0.0, 0.5, 0.0};
    }
    return {};
}

NigDensity nig_density(const NIGParams& p, double mu, double sigma2) {
    if (!(sigma2 > 0.0))
        raise(ErrorKind::DomainError, "nig_density requires sigma2 > 0");
    NigDensity out;
    out.normalized = p.proper();

    double normal_part = 1.0;
    if (p.tau > 0.0) {
        normal_part = std::pow(2.0 * std::numbers::pi * sigma2 / p.tau, -0.5) *
                      std::exp(-0.5 * p.tau * (mu - p.mu0) * (mu - p.mu0) / sigma2);
    }
    double ig_part = std::pow(sigma2, -p.u - 1.0) * std::exp(-p.v / sigma2);
    if (p.u > 0.0 && p.v > 0.0)
        ig_part *= std::exp(p.u * std::log(p.v) - specfun::ln_gamma(p.u));
    out.value = normal_part * ig_part;
    return out;
}

NIGParams nig_update(const NIGParams& prior, int n, double ybar, double ss) {
    if (n < 0)
        raise(ErrorKind::DomainError, "nig_update requires n >= 0");
    if (!(ss >= 0.0))
        raise(ErrorKind::DomainError, "nig_update requires ss >= 0");
    if (n == 0)
        return prior;
    NIGParams post;
    post.tau = prior.tau + n;
    post.mu0 = (prior.tau * prior.mu0 + n * ybar) / post.tau;
    post.u = prior.u + 0.5 * n;
    // (ybar - mu0)^2 / (1/n + 1/tau); the shrink term vanishes as tau -> 0.
    const double shrink =
        prior.tau > 0.0
            ? (ybar - prior.mu0) * (ybar - prior.mu0) * (prior.tau * n) / (prior.tau + n)
            : 0.0;
    post.v = prior.v + 0.5 * (ss + shrink);
    return post;
}

void to_json(nlohmann::json& j, const Hyperparameters& h) {
    j = nlohmann::json{{"alpha0", h.alpha0},   {"tau_alpha", h.tau_alpha},
                       {"tau_eps", h.tau_eps}, {"kappa_eps", h.kappa_eps},
                       {"u_alpha", h.u_alpha}, {"v_alpha", h.v_alpha},
                       {"u_eps", h.u_eps},     {"v_eps", h.v_eps}};
}

void from_json(const nlohmann::json& j, Hyperparameters& h) {
    j.at("alpha0").get_to(h.alpha0);
    j.at("tau_alpha").get_to(h.tau_alpha);
    j.at("tau_eps").get_to(h.tau_eps);
    j.at("kappa_eps").get_to(h.kappa_eps);
    j.at("u_alpha").get_to(h.u_alpha);
    j.at("v_alpha").get_to(h.v_alpha);
    j.at("u_eps").get_to(h.u_eps);
    j.at("v_eps").get_to(h.v_eps);
}

Hyperparameters default_hyperparameters(const BalancedOneWayData& data) {
    const GroupSummary s = summarize(data);
    Hyperparameters h;
    h.alpha0 = kernels::sum(s.group_means) / static_cast<double>(data.n_groups());
    h.tau_alpha = 1.0;
    h.tau_eps = 0.0;
    h.kappa_eps = h.tau_alpha / data.n_reps();
    h.u_alpha = h.v_alpha = h.u_eps = h.v_eps = 0.0;
    return h;
}

OneWayPosterior posterior_update(const Hyperparameters& h, const BalancedOneWayData& data) {
    if (!h.conjugate_for(data.n_reps()))
        raise(ErrorKind::NonConjugateConfig,
              "direct sampling requires tau_eps = 0 and kappa_eps = tau_alpha / n_reps (= " +
                  std::to_string(h.tau_alpha / data.n_reps()) + ")");
    const GroupSummary s = summarize(data);
    OneWayPosterior post;
    post.group_means = s.group_means;
    post.alpha0 = h.alpha0;
    post.tau_alpha = h.tau_alpha;
    post.kappa_eps = h.kappa_eps;
    post.n_groups = data.n_groups();
    post.n_reps = data.n_reps();
    post.ig_eps = {h.u_eps + 0.5 * (data.n_total() - data.n_groups()),
                   h.v_eps + 0.5 * within_sse(data, s)};
    post.ig_alpha_eps = {h.u_alpha + 0.5 * data.n_groups(),
                         h.v_alpha + 0.5 * h.tau_alpha * group_mean_quad(s, h.alpha0)};
    return post;
}

double log_kernel_sigma2_eps(const Hyperparameters& h, const BalancedOneWayData& data,
                             double sigma2_eps) {
    if (!(sigma2_eps > 0.0))
        raise(ErrorKind::DomainError, "log_kernel_sigma2_eps requires sigma2_eps > 0");
    const GroupSummary s = summarize(data);
    const double shape = h.u_eps + 0.5 * (data.n_total() - data.n_groups());
    const double scale = h.v_eps + 0.5 * within_sse(data, s);
    return -(shape + 1.0) * std::log(sigma2_eps) - scale / sigma2_eps;
}

double log_kernel_sigma2_alpha(const Hyperparameters& h, const BalancedOneWayData& data,
                               double sigma2_alpha, double sigma2_eps) {
    if (!(sigma2_eps > 0.0))
        raise(ErrorKind::DomainError, "log_kernel_sigma2_alpha requires sigma2_eps > 0");
    const double shifted = sigma2_alpha + h.kappa_eps * sigma2_eps;
    if (!(shifted > 0.0))
        raise(ErrorKind::DomainError,
              "log_kernel_sigma2_alpha requires sigma2_alpha + kappa_eps * sigma2_eps > 0");
    // varsigma^2 = (tau_alpha / sigma2_alpha + tau_eps / sigma2_eps)^-1;
    // IEEE semantics give varsigma^2 = 0 at sigma2_alpha = 0.
    const double precision = h.tau_alpha / sigma2_alpha + h.tau_eps / sigma2_eps;
    const double varsigma2 = 1.0 / precision;
    const double mean_var = varsigma2 + sigma2_eps / data.n_reps();
    if (!(mean_var > 0.0))
        raise(ErrorKind::DomainError, "log_kernel_sigma2_alpha outside the supported region");
    const GroupSummary s = summarize(data);
    const double quad = group_mean_quad(s, h.alpha0);
    return -(h.u_alpha + 1.0) * std::log(shifted) - 0.5 * data.n_groups() * std::log(mean_var) -
           h.v_alpha / shifted - 0.5 * quad / mean_var;
}

} // namespace banova
