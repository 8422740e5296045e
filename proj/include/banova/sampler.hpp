#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "banova/bayes.hpp"
#include "banova/rng.hpp"

namespace banova {

struct PosteriorDraw {
    double sigma2_eps = 0.0;
    double sigma2_alpha = 0.0;
    bool at_zero = false; // sigma2_alpha_eps draw fell below kappa_eps * sigma2_eps
    std::vector<double> alpha;
};

// Per-draw internals, exposed for verification.
struct DrawIntermediates {
    double sigma2_alpha_eps = 0.0; // raw InvGamma draw before the shift
    double varsigma2 = 0.0;        // (tau_alpha/sigma2_alpha + tau_eps/sigma2_eps)^-1
    double q_alpha = 0.0;          // alpha-conditional precision
};

// One joint draw in the fixed order sigma2_eps, sigma2_alpha_eps, alpha_i.
// The negative-support part of sigma2_alpha collapses onto a mass point at
// zero, where the alpha conditional degenerates to alpha0 exactly.
PosteriorDraw draw_one(const OneWayPosterior& post, RngStream& rng,
                       DrawIntermediates* intermediates = nullptr);

// Joint draws in structure-of-arrays layout; draw k is generated from the
// stream (seed, k), so any partitioning over threads yields identical output.
struct PosteriorSample {
    std::size_t n_draws = 0;
    int n_groups = 0;
    std::uint64_t seed = 0;
    std::vector<double> sigma2_eps;
    std::vector<double> sigma2_alpha;
    std::vector<std::uint8_t> at_zero;
    std::vector<double> finite_sd; // s_alpha per draw, divisor n_groups - 1
    std::vector<double> alphas;    // row-major, n_draws x n_groups

    std::span<const double> alpha(std::size_t k) const {
        return std::span<const double>(alphas).subspan(k * static_cast<std::size_t>(n_groups),
                                                       static_cast<std::size_t>(n_groups));
    }
    PosteriorDraw draw(std::size_t k) const;
};

PosteriorSample sample(const OneWayPosterior& post, std::size_t n_draws, std::uint64_t seed,
                       unsigned n_threads = 0);

// Posterior predictive for one future observation given a joint draw:
// an existing group index uses N(alpha_i, sigma2_eps); std::nullopt asks for
// an unseen group, alpha* ~ N(alpha0, sigma2_alpha) then N(alpha*, sigma2_eps).
double predictive_draw(const OneWayPosterior& post, const PosteriorDraw& draw,
                       std::optional<int> group_index, RngStream& rng);

// CSV export: draw, sigma2_eps, sigma2_alpha, at_zero, alpha_1..alpha_nI, s_alpha.
void write_draws_csv(std::ostream& out, const PosteriorSample& sample);

} // namespace banova
