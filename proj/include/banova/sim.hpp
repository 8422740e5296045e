#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "banova/dataset.hpp"

namespace banova {

struct SimSpec {
    int n_groups = 2;
    int n_reps = 2;
    double sigma2_alpha = 0.0;
    double sigma2_eps = 1.0;
    std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const SimSpec& spec);
void from_json(const nlohmann::json& j, SimSpec& spec);

// The two contrast cases: A = (sigma2_alpha 1/2, n_reps 6), B = (2, 2),
// both with 5 groups and unit error variance.
SimSpec preset_case_a();
SimSpec preset_case_b();

// Y_ij = alpha_i + eps_ij with alpha_i ~ N(0, sigma2_alpha) and
// eps_ij ~ N(0, sigma2_eps); deterministic per spec.seed.
BalancedOneWayData generate(const SimSpec& spec);

struct ReplicateRecord {
    std::string case_label;
    int replicate = 0;
    double p_value = 0.0;
    double pr_null = 0.0;
    double pr_gt_finite = 0.0; // Pr(s_alpha > sigma_eps | Y)
    double pr_gt_super = 0.0;  // Pr(sigma_alpha > sigma_eps | Y)
    double mom_sigma2_alpha = 0.0;
    double mom_sigma2_eps = 0.0;
};

struct CaseAggregate {
    std::string case_label;
    double median_pr_gt_finite = 0.0;
    double median_pr_gt_super = 0.0;
    double median_p_value = 0.0;
    double median_pr_null = 0.0;
    double spearman_p_vs_pr_null = 0.0;
};

struct StudyReport {
    std::vector<ReplicateRecord> records; // all case-A rows, then all case-B rows
    std::vector<CaseAggregate> aggregates;
    std::size_t n_reps = 0;
    std::size_t draws_per_rep = 0;
    std::uint64_t seed = 0;
};

// Runs the classical and Bayesian pipelines on fresh data per replicate and
// case.  Each replicate derives its generator and sampler seeds from
// (seed, case tag, replicate index), so cases and replicates are decoupled
// and the report is reproducible under any execution order.
StudyReport replicate_study(const SimSpec& case_a, const SimSpec& case_b, std::size_t n_reps,
                            std::size_t draws_per_rep, std::uint64_t seed);

// Spearman rank correlation with average ranks for ties; NaN when either
// input is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

void write_replicates_csv(std::ostream& out, const StudyReport& report);
nlohmann::json aggregate_to_json(const StudyReport& report);

} // namespace banova
