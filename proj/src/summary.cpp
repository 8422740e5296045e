#include "banova/summary.hpp"

#include "banova/error.hpp"
#include "banova/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace banova {

namespace {

std::vector<double> sd_scale(std::span<const double> variances) {
    std::vector<double> out(variances.size());
    kernels::sqrt_all(variances, out);
    return out;
}

BanovaRow make_row(std::string label, ParamKind kind, const std::vector<double>& sd_draws,
                   std::span<const double> error_sd, double ci_level, bool is_error_row) {
    const double n = static_cast<double>(sd_draws.size());
    BanovaRow row;
    row.label = std::move(label);
    row.param_kind = kind;
    row.mean = kernels::sum(sd_draws) / n;
    std::vector<double> sorted(sd_draws);
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&](double p) {
        const std::size_t k = std::min<std::size_t>(
            sorted.size(),
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p * n))));
        return sorted[k - 1];
    };
    row.median = rank(0.5);
    row.q_lo = rank(0.5 * (1.0 - ci_level));
    row.q_hi = rank(1.0 - 0.5 * (1.0 - ci_level));
    if (!is_error_row) {
        row.pr_gt_error =
            static_cast<double>(kernels::count_greater(sd_draws, error_sd)) / n;
        row.zero_mass = static_cast<double>(kernels::count_equal(sd_draws, 0.0)) / n;
    }
    return row;
}

} // namespace

const char* param_kind_name(ParamKind kind) {
    switch (kind) {
    case ParamKind::FiniteSd: return "finite_sd";
    case ParamKind::SuperSd: return "super_sd";
    case ParamKind::ErrorSd: return "error_sd";
    }
    return "";
}

double quantile_type1(std::vector<double> values, double p) {
    if (values.empty())
        raise(ErrorKind::DomainError, "quantile of empty sample");
    if (!(p >= 0.0) || !(p <= 1.0))
        raise(ErrorKind::DomainError, "quantile level must lie in [0,1]");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const std::size_t k = std::min<std::size_t>(
        values.size(), std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p * n))));
    return values[k - 1];
}

BanovaTable banova_table(const PosteriorSample& sample, double ci_level) {
    if (sample.n_draws < 1000)
        raise(ErrorKind::TooFewDraws,
              "banova_table needs at least 1000 draws, got " + std::to_string(sample.n_draws));
    if (!(ci_level > 0.0) || !(ci_level < 1.0))
        raise(ErrorKind::DomainError, "ci_level must lie in (0,1)");

    const std::vector<double> error_sd = sd_scale(sample.sigma2_eps);
    const std::vector<double> super_sd = sd_scale(sample.sigma2_alpha);

    BanovaTable table;
    table.n_draws = sample.n_draws;
    table.seed = sample.seed;
    table.ci_level = ci_level;
    table.rows.push_back(
        make_row("factor", ParamKind::FiniteSd, sample.finite_sd, error_sd, ci_level, false));
    table.rows.push_back(
        make_row("factor", ParamKind::SuperSd, super_sd, error_sd, ci_level, false));
    table.rows.push_back(
        make_row("errors", ParamKind::ErrorSd, error_sd, error_sd, ci_level, true));
    return table;
}

double pr_null(const PosteriorSample& sample) {
    if (sample.n_draws == 0)
        return 0.0;
    std::size_t count = 0;
    for (const auto flag : sample.at_zero)
        count += flag ? 1u : 0u;
    return static_cast<double>(count) / static_cast<double>(sample.n_draws);
}

std::vector<IntervalRecord> interval_plot_data(const BanovaTable& table,
                                               const PosteriorSample& sample) {
    std::vector<IntervalRecord> records;
    records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        std::vector<double> sd_draws;
        switch (row.param_kind) {
        case ParamKind::FiniteSd:
            sd_draws.assign(sample.finite_sd.begin(), sample.finite_sd.end());
            break;
        case ParamKind::SuperSd: sd_draws = sd_scale(sample.sigma2_alpha); break;
        case ParamKind::ErrorSd: sd_draws = sd_scale(sample.sigma2_eps); break;
        }
        std::sort(sd_draws.begin(), sd_draws.end());
        const double n = static_cast<double>(sd_draws.size());
        auto rank = [&](double p) {
            const std::size_t k = std::min<std::size_t>(
                sd_draws.size(),
                std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p * n))));
            return sd_draws[k - 1];
        };
        IntervalRecord rec;
        rec.label = row.label;
        rec.kind = row.param_kind;
        rec.lo50 = rank(0.25);
        rec.hi50 = rank(0.75);
        rec.lo95 = rank(0.025);
        rec.hi95 = rank(0.975);
        rec.median = rank(0.5);
        rec.zero_dot = row.zero_mass.has_value() && *row.zero_mass > 0.0;
        records.push_back(std::move(rec));
    }
    return records;
}

GridSpec default_hpd_grid(const PosteriorSample& sample, std::size_t n_alpha, std::size_t n_eps) {
    std::vector<double> sd(sample.sigma2_alpha.size());
    kernels::sqrt_all(sample.sigma2_alpha, sd);
    double hi_alpha = kernels::max_value(sd) * 1.05;
    kernels::sqrt_all(sample.sigma2_eps, sd);
    double hi_eps = kernels::max_value(sd) * 1.05;
    if (!(hi_alpha > 0.0))
        hi_alpha = 1.0;
    if (!(hi_eps > 0.0))
        hi_eps = 1.0;
    return {{0.0, hi_alpha, n_alpha}, {0.0, hi_eps, n_eps}};
}

RegionGrid hpd_region_grid(const PosteriorSample& sample, const GridSpec& grid,
                           const std::vector<double>& levels) {
    if (sample.n_draws < 10000)
        raise(ErrorKind::TooFewDraws,
              "hpd_region_grid needs at least 10000 draws, got " + std::to_string(sample.n_draws));
    if (grid.sigma_alpha.n < 1 || grid.sigma_eps.n < 1)
        raise(ErrorKind::DomainError, "grid needs at least 1 cell per axis");
    if (!(grid.sigma_alpha.hi > grid.sigma_alpha.lo) || !(grid.sigma_eps.hi > grid.sigma_eps.lo) ||
        !(grid.sigma_alpha.lo >= 0.0) || !(grid.sigma_eps.lo >= 0.0))
        raise(ErrorKind::DomainError, "grid bounds must be nonnegative and increasing");

    const std::size_t na = grid.sigma_alpha.n;
    const std::size_t ne = grid.sigma_eps.n;
    const double wa = (grid.sigma_alpha.hi - grid.sigma_alpha.lo) / static_cast<double>(na);
    const double we = (grid.sigma_eps.hi - grid.sigma_eps.lo) / static_cast<double>(ne);

    std::vector<std::size_t> counts(na * ne, 0);
    auto cell_of = [](double x, double lo, double hi, double w, std::size_t n) -> std::ptrdiff_t {
        if (x < lo || x > hi)
            return -1;
        std::size_t c = static_cast<std::size_t>((x - lo) / w);
        if (c >= n)
            c = n - 1; // x == hi lands in the top cell
        return static_cast<std::ptrdiff_t>(c);
    };
    for (std::size_t k = 0; k < sample.n_draws; ++k) {
        const double sa = std::sqrt(sample.sigma2_alpha[k]);
        const double se = std::sqrt(sample.sigma2_eps[k]);
        const auto ia = cell_of(sa, grid.sigma_alpha.lo, grid.sigma_alpha.hi, wa, na);
        const auto ie = cell_of(se, grid.sigma_eps.lo, grid.sigma_eps.hi, we, ne);
        if (ia >= 0 && ie >= 0)
            ++counts[static_cast<std::size_t>(ia) * ne + static_cast<std::size_t>(ie)];
    }

    RegionGrid out;
    out.kind = RegionKind::HpdDensity;
    out.sigma_alpha_axis.resize(na);
    for (std::size_t i = 0; i < na; ++i)
        out.sigma_alpha_axis[i] = grid.sigma_alpha.lo + (static_cast<double>(i) + 0.5) * wa;
    out.sigma_eps_axis.resize(ne);
    for (std::size_t i = 0; i < ne; ++i)
        out.sigma_eps_axis[i] = grid.sigma_eps.lo + (static_cast<double>(i) + 0.5) * we;

    const double total = static_cast<double>(sample.n_draws);
    const double to_density = 1.0 / (total * wa * we);
    out.values.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out.values[i] = static_cast<double>(counts[i]) * to_density;

    std::vector<std::size_t> sorted(counts);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    out.contour_levels.reserve(levels.size());
    for (const double level : levels) {
        if (!(level > 0.0) || !(level < 1.0))
            raise(ErrorKind::DomainError, "confidence level must lie in (0,1)");
        // Largest count c with coverage(cells >= c) >= level, ties included.
        std::size_t cum = 0;
        std::size_t threshold_count = 0;
        for (std::size_t i = 0; i < sorted.size() && sorted[i] > 0;) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i])
                cum += sorted[j++];
            if (static_cast<double>(cum) >= level * total) {
                threshold_count = sorted[i];
                break;
            }
            i = j;
        }
        out.contour_levels.emplace_back(level, static_cast<double>(threshold_count) * to_density);
    }
    return out;
}

} // namespace banova
