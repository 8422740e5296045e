#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace banova {

// Balanced one-way layout: n_groups() factor levels with exactly n_reps()
// observations each, stored row per group in first-appearance order.
struct BalancedOneWayData {
    std::vector<std::string> group_labels;
    std::vector<double> values; // row-major, n_groups x n_reps

    int n_groups() const noexcept { return static_cast<int>(group_labels.size()); }
    int n_reps() const noexcept {
        return group_labels.empty() ? 0 : static_cast<int>(values.size() / group_labels.size());
    }
    int n_total() const noexcept { return static_cast<int>(values.size()); }

    std::span<const double> group(int i) const {
        return std::span<const double>(values).subspan(
            static_cast<std::size_t>(i) * static_cast<std::size_t>(n_reps()),
            static_cast<std::size_t>(n_reps()));
    }
};

struct GroupSummary {
    std::vector<double> group_means;
    double grand_mean = 0.0;
};

// Parses `group,value` CSV.  Groups keep first-appearance order; every group
// must carry the same number of rows.
BalancedOneWayData load_csv(std::istream& source);
BalancedOneWayData load_csv_file(const std::string& path);

GroupSummary summarize(const BalancedOneWayData& data);

} // namespace banova
