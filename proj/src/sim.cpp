#include "banova/sim.hpp"

#include "banova/classical.hpp"
#include "banova/error.hpp"
#include "banova/kernels.hpp"
#include "banova/sampler.hpp"
#include "banova/specfun.hpp"
#include "banova/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

namespace banova {

namespace {

constexpr std::uint64_t kTagCaseA = 0xA;
constexpr std::uint64_t kTagCaseB = 0xB;
constexpr std::uint64_t kPurposeData = 1;
constexpr std::uint64_t kPurposeSampler = 2;

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0)
        return std::numeric_limits<double>::quiet_NaN();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]])
            ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j - 1)) + 1.0;
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

} // namespace

void to_json(nlohmann::json& j, const SimSpec& spec) {
    j = nlohmann::json{{"n_groups", spec.n_groups},
                       {"n_reps", spec.n_reps},
                       {"sigma2_alpha", spec.sigma2_alpha},
                       {"sigma2_eps", spec.sigma2_eps},
                       {"seed", spec.seed}};
}

void from_json(const nlohmann::json& j, SimSpec& spec) {
    j.at("n_groups").get_to(spec.n_groups);
    j.at("n_reps").get_to(spec.n_reps);
    j.at("sigma2_alpha").get_to(spec.sigma2_alpha);
    j.at("sigma2_eps").get_to(spec.sigma2_eps);
    if (j.contains("seed"))
        j.at("seed").get_to(spec.seed);
}

SimSpec preset_case_a() { return {5, 6, 0.5, 1.0, 0}; }
SimSpec preset_case_b() { return {5, 2, 2.0, 1.0, 0}; }

BalancedOneWayData generate(const SimSpec& spec) {
    if (spec.n_groups < 2 || spec.n_reps < 2)
        raise(ErrorKind::DomainError, "sim spec needs n_groups >= 2 and n_reps >= 2");
    if (!(spec.sigma2_alpha >= 0.0) || !(spec.sigma2_eps > 0.0))
        raise(ErrorKind::DomainError, "sim spec needs sigma2_alpha >= 0 and sigma2_eps > 0");

    RngStream alpha_rng(spec.seed, 0);
    RngStream eps_rng(spec.seed, 1);
    BalancedOneWayData data;
    data.group_labels.reserve(static_cast<std::size_t>(spec.n_groups));
    data.values.reserve(static_cast<std::size_t>(spec.n_groups * spec.n_reps));
    for (int i = 0; i < spec.n_groups; ++i) {
        data.group_labels.push_back("g" + std::to_string(i + 1));
        const double alpha = specfun::sample_normal(alpha_rng, 0.0, spec.sigma2_alpha);
        for (int j = 0; j < spec.n_reps; ++j)
            data.values.push_back(alpha + specfun::sample_normal(eps_rng, 0.0, spec.sigma2_eps));
    }
    return data;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        raise(ErrorKind::DomainError, "spearman needs two equal-length samples of size >= 2");
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = kernels::sum(rx) / n;
    const double my = kernels::sum(ry) / n;
    double sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i)
        sxy += (rx[i] - mx) * (ry[i] - my);
    const double sx = kernels::sum_sq_dev(rx, mx);
    const double sy = kernels::sum_sq_dev(ry, my);
    if (sx == 0.0 || sy == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sx * sy);
}

StudyReport replicate_study(const SimSpec& case_a, const SimSpec& case_b, std::size_t n_reps,
                            std::size_t draws_per_rep, std::uint64_t seed) {
    if (n_reps < 1)
        raise(ErrorKind::DomainError, "replicate_study needs n_reps >= 1");
    if (draws_per_rep < 1)
        raise(ErrorKind::TooFewDraws, "replicate_study needs draws_per_rep >= 1");

    StudyReport report;
    report.n_reps = n_reps;
    report.draws_per_rep = draws_per_rep;
    report.seed = seed;

    const std::pair<const SimSpec*, std::uint64_t> cases[2] = {{&case_a, kTagCaseA},
                                                               {&case_b, kTagCaseB}};
    const char* labels[2] = {"A", "B"};

    for (int c = 0; c < 2; ++c) {
        const SimSpec& base = *cases[c].first;
        const std::uint64_t tag = cases[c].second;
        std::vector<double> p_values, pr_nulls, pr_finite, pr_super;
        p_values.reserve(n_reps);
        pr_nulls.reserve(n_reps);
        pr_finite.reserve(n_reps);
        pr_super.reserve(n_reps);

        for (std::size_t r = 0; r < n_reps; ++r) {
            SimSpec spec = base;
            spec.seed = derive_seed(seed, tag, (r << 8) | kPurposeData);
            const BalancedOneWayData data = generate(spec);

            const ClassicalTable classical = fixed_effects_table(data);
            const VarCompEstimate mom = mom_varcomp(data);

            const OneWayPosterior post = posterior_update(default_hyperparameters(data), data);
            const PosteriorSample draws =
                sample(post, draws_per_rep, derive_seed(seed, tag, (r << 8) | kPurposeSampler), 1);

            std::vector<double> error_sd(draws.sigma2_eps.size());
            kernels::sqrt_all(draws.sigma2_eps, error_sd);
            std::vector<double> super_sd(draws.sigma2_alpha.size());
            kernels::sqrt_all(draws.sigma2_alpha, super_sd);
            const double n = static_cast<double>(draws.n_draws);

            ReplicateRecord rec;
            rec.case_label = labels[c];
            rec.replicate = static_cast<int>(r);
            rec.p_value = classical.rows[0].p_value.value_or(1.0);
            rec.pr_null = pr_null(draws);
            rec.pr_gt_finite =
                static_cast<double>(kernels::count_greater(draws.finite_sd, error_sd)) / n;
            rec.pr_gt_super = static_cast<double>(kernels::count_greater(super_sd, error_sd)) / n;
            rec.mom_sigma2_alpha = mom.sigma2_alpha_hat;
            rec.mom_sigma2_eps = mom.sigma2_eps_hat;
            report.records.push_back(rec);

            p_values.push_back(rec.p_value);
            pr_nulls.push_back(rec.pr_null);
            pr_finite.push_back(rec.pr_gt_finite);
            pr_super.push_back(rec.pr_gt_super);
        }

        CaseAggregate agg;
        agg.case_label = labels[c];
        agg.median_pr_gt_finite = median_of(pr_finite);
        agg.median_pr_gt_super = median_of(pr_super);
        agg.median_p_value = median_of(p_values);
        agg.median_pr_null = median_of(pr_nulls);
        agg.spearman_p_vs_pr_null =
            n_reps >= 2 ? spearman(p_values, pr_nulls) : std::numeric_limits<double>::quiet_NaN();
        report.aggregates.push_back(agg);
    }
    return report;
}

void write_replicates_csv(std::ostream& out, const StudyReport& report) {
    char buf[32];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf;
    };
    out << "case,replicate,p_value,pr_null,pr_gt_finite,pr_gt_super,mom_sigma2_alpha,mom_sigma2_eps\n";
    for (const auto& rec : report.records) {
        out << rec.case_label << ',' << rec.replicate << ',';
        put(rec.p_value);
        out << ',';
        put(rec.pr_null);
        out << ',';
        put(rec.pr_gt_finite);
        out << ',';
        put(rec.pr_gt_super);
        out << ',';
        put(rec.mom_sigma2_alpha);
        out << ',';
        put(rec.mom_sigma2_eps);
        out << "\n";
    }
}

nlohmann::json aggregate_to_json(const StudyReport& report) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& agg : report.aggregates) {
        cases.push_back({{"case", agg.case_label},
                         {"median_pr_gt_finite", agg.median_pr_gt_finite},
                         {"median_pr_gt_super", agg.median_pr_gt_super},
                         {"median_p_value", agg.median_p_value},
                         {"median_pr_null", agg.median_pr_null},
                         {"spearman_p_vs_pr_null", agg.spearman_p_vs_pr_null}});
    }
    return nlohmann::json{{"n_reps", report.n_reps},
                          {"draws_per_rep", report.draws_per_rep},
                          {"seed", report.seed},
                          {"cases", std::move(cases)}};
}

} // namespace banova
