#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banova/region.hpp"
#include "banova/sampler.hpp"

namespace banova {

enum class ParamKind { FiniteSd, SuperSd, ErrorSd };

const char* param_kind_name(ParamKind kind);

struct BanovaRow {
    std::string label;
    ParamKind param_kind = ParamKind::FiniteSd;
    double mean = 0.0;
    double median = 0.0;
    double q_lo = 0.0;
    double q_hi = 0.0;
    std::optional<double> pr_gt_error; // absent for the error row
    std::optional<double> zero_mass;   // absent for the error row
};

struct BanovaTable {
    std::vector<BanovaRow> rows; // finite, super, error
    std::size_t n_draws = 0;
    std::uint64_t seed = 0;
    double ci_level = 0.95;
};

// Posterior summary on the sd scale.  Quantiles are nearest-rank (type 1)
// at (1-ci)/2 and 1-(1-ci)/2; Pr(> sigma_eps) is the paired per-draw
// comparison against the error sd.
BanovaTable banova_table(const PosteriorSample& sample, double ci_level = 0.95);

// Monte Carlo estimate of Pr(sigma2_alpha = 0 | Y): the at-zero fraction.
double pr_null(const PosteriorSample& sample);

struct IntervalRecord {
    std::string label;
    ParamKind kind = ParamKind::FiniteSd;
    double lo50 = 0.0;
    double hi50 = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
    double median = 0.0;
    bool zero_dot = false; // draw a boundary dot at 0 (mass at zero present)
};

std::vector<IntervalRecord> interval_plot_data(const BanovaTable& table,
                                               const PosteriorSample& sample);

// Histogram-based highest-posterior-density field over (sigma_alpha,
// sigma_eps); for each confidence level the threshold is the largest density
// d such that cells with density >= d hold at least that share of the draws.
RegionGrid hpd_region_grid(const PosteriorSample& sample, const GridSpec& grid,
                           const std::vector<double>& levels);

// Cells spanning [0, 1.05 * max draw] on each axis.
GridSpec default_hpd_grid(const PosteriorSample& sample, std::size_t n_alpha = 100,
                          std::size_t n_eps = 100);

// Nearest-rank (type 1) empirical quantile of an unsorted sample copy.
double quantile_type1(std::vector<double> values, double p);

} // namespace banova
