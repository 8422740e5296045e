#include "banova/sampler.hpp"

#include "banova/error.hpp"
#include "banova/kernels.hpp"
#include "banova/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace banova {

namespace {

// s_alpha uses the sample-variance divisor n_I - 1; kept in one place so the
// convention is easy to change.
double finite_population_sd(std::span<const double> alpha) {
    const double n = static_cast<double>(alpha.size());
    const double mean = kernels::sum(alpha) / n;
    return std::sqrt(kernels::sum_sq_dev(alpha, mean) / (n - 1.0));
}

void check_proper(const OneWayPosterior& post) {
    if (!post.proper())
        raise(ErrorKind::DegeneratePosterior,
              "updated IG parameters must be positive; ig_eps = (" +
                  std::to_string(post.ig_eps.shape) + ", " + std::to_string(post.ig_eps.scale) +
                  "), ig_alpha_eps = (" + std::to_string(post.ig_alpha_eps.shape) + ", " +
                  std::to_string(post.ig_alpha_eps.scale) + ")");
    if (post.n_groups < 2)
        raise(ErrorKind::DegeneratePosterior, "posterior carries fewer than 2 groups");
}

// Draws directly into caller storage; the hot path for sample().
void draw_into(const OneWayPosterior& post, RngStream& rng, std::span<double> alpha_out,
               double& sigma2_eps, double& sigma2_alpha, bool& at_zero, double& finite_sd,
               DrawIntermediates* intermediates) {
    sigma2_eps = specfun::sample_inv_gamma(rng, post.ig_eps.shape, post.ig_eps.scale);
    const double sigma2_alpha_eps =
        specfun::sample_inv_gamma(rng, post.ig_alpha_eps.shape, post.ig_alpha_eps.scale);
    const double shifted = sigma2_alpha_eps - post.kappa_eps * sigma2_eps;
    at_zero = !(shifted > 0.0);
    sigma2_alpha = at_zero ? 0.0 : shifted;

    double varsigma2 = 0.0;
    double q_alpha = std::numeric_limits<double>::infinity();
    if (at_zero) {
        // Q_alpha -> infinity as sigma2_alpha -> 0: the conditional collapses
        // onto alpha0.
        std::fill(alpha_out.begin(), alpha_out.end(), post.alpha0);
        finite_sd = 0.0;
    } else {
        varsigma2 = sigma2_alpha / post.tau_alpha;
        q_alpha = post.tau_alpha / sigma2_alpha + post.n_reps / sigma2_eps;
        const double var = 1.0 / q_alpha;
        const double w_prior = post.tau_alpha / sigma2_alpha;
        const double w_data = post.n_reps / sigma2_eps;
        for (int i = 0; i < post.n_groups; ++i) {
            const double loc =
                var * (w_prior * post.alpha0 + w_data * post.group_means[static_cast<std::size_t>(i)]);
            alpha_out[static_cast<std::size_t>(i)] = specfun::sample_normal(rng, loc, var);
        }
        finite_sd = finite_population_sd(alpha_out);
    }
    if (intermediates)
        *intermediates = {sigma2_alpha_eps, varsigma2, q_alpha};
}

} // namespace

PosteriorDraw draw_one(const OneWayPosterior& post, RngStream& rng,
                       DrawIntermediates* intermediates) {
    check_proper(post);
    PosteriorDraw draw;
    draw.alpha.resize(static_cast<std::size_t>(post.n_groups));
    double finite_sd = 0.0;
    draw_into(post, rng, draw.alpha, draw.sigma2_eps, draw.sigma2_alpha, draw.at_zero, finite_sd,
              intermediates);
    return draw;
}

PosteriorDraw PosteriorSample::draw(std::size_t k) const {
    PosteriorDraw d;
    d.sigma2_eps = sigma2_eps[k];
    d.sigma2_alpha = sigma2_alpha[k];
    d.at_zero = at_zero[k] != 0;
    const auto a = alpha(k);
    d.alpha.assign(a.begin(), a.end());
    return d;
}

PosteriorSample sample(const OneWayPosterior& post, std::size_t n_draws, std::uint64_t seed,
                       unsigned n_threads) {
    check_proper(post);
    if (n_draws < 1)
        raise(ErrorKind::TooFewDraws, "need at least 1 draw");

    PosteriorSample out;
    out.n_draws = n_draws;
    out.n_groups = post.n_groups;
    out.seed = seed;
    out.sigma2_eps.resize(n_draws);
    out.sigma2_alpha.resize(n_draws);
    out.at_zero.resize(n_draws);
    out.finite_sd.resize(n_draws);
    out.alphas.resize(n_draws * static_cast<std::size_t>(post.n_groups));

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            RngStream rng(seed, k);
            bool zero = false;
            draw_into(post, rng,
                      std::span<double>(out.alphas)
                          .subspan(k * static_cast<std::size_t>(post.n_groups),
                                   static_cast<std::size_t>(post.n_groups)),
                      out.sigma2_eps[k], out.sigma2_alpha[k], zero, out.finite_sd[k], nullptr);
            out.at_zero[k] = zero ? 1 : 0;
        }
    };

    unsigned workers = n_threads == 0 ? std::thread::hardware_concurrency() : n_threads;
    workers = std::clamp<unsigned>(workers, 1u, 16u);
    if (workers <= 1 || n_draws < 4096) {
        run_range(0, n_draws);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n_draws + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min<std::size_t>(w * chunk, n_draws);
            const std::size_t end = std::min<std::size_t>(begin + chunk, n_draws);
            if (begin < end)
                pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool)
            t.join();
    }
    return out;
}

double predictive_draw(const OneWayPosterior& post, const PosteriorDraw& draw,
                       std::optional<int> group_index, RngStream& rng) {
    if (group_index) {
        const int i = *group_index;
        if (i < 0 || i >= static_cast<int>(draw.alpha.size()))
            raise(ErrorKind::UnknownGroup, "group index " + std::to_string(i) + " out of range");
        return specfun::sample_normal(rng, draw.alpha[static_cast<std::size_t>(i)], draw.sigma2_eps);
    }
    const double alpha_new = specfun::sample_normal(rng, post.alpha0, draw.sigma2_alpha);
    return specfun::sample_normal(rng, alpha_new, draw.sigma2_eps);
}

void write_draws_csv(std::ostream& out, const PosteriorSample& sample) {
    char buf[32];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf;
    };
    out << "draw,sigma2_eps,sigma2_alpha,at_zero";
    for (int i = 1; i <= sample.n_groups; ++i)
        out << ",alpha_" << i;
    out << ",s_alpha\n";
    for (std::size_t k = 0; k < sample.n_draws; ++k) {
        out << k << ',';
        put(sample.sigma2_eps[k]);
        out << ',';
        put(sample.sigma2_alpha[k]);
        out << ',' << (sample.at_zero[k] ? 1 : 0);
        for (const double a : sample.alpha(k)) {
            out << ',';
            put(a);
        }
        out << ',';
        put(sample.finite_sd[k]);
        out << "\n";
    }
}

} // namespace banova
