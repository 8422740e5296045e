#include "banova/dataset.hpp"

#include "banova/error.hpp"
#include "banova/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <unordered_map>

namespace banova {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_value(std::string_view field, std::size_t line_no) {
    const std::string_view v = trim(field);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        raise(ErrorKind::NonNumericValue,
              "line " + std::to_string(line_no) + ": '" + std::string(v) + "' is not a number");
    if (!std::isfinite(out))
        raise(ErrorKind::NonNumericValue,
              "line " + std::to_string(line_no) + ": value must be finite");
    return out;
}

} // namespace

BalancedOneWayData load_csv(std::istream& source) {
    std::string line;
    if (!std::getline(source, line))
        raise(ErrorKind::EmptyInput, "no header row");
    if (!line.empty() && line.front() == '\xEF' && line.size() >= 3)
        line.erase(0, 3); // UTF-8 BOM
    if (trim(line) != "group,value")
        raise(ErrorKind::MalformedInput, "expected header 'group,value', got '" + line + "'");

    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
    std::unordered_map<std::string, std::size_t> index;

    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty())
            continue;
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            raise(ErrorKind::MalformedInput,
                  "line " + std::to_string(line_no) + ": expected exactly two fields");
        const std::string label(trim(row.substr(0, comma)));
        if (label.empty())
            raise(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": empty group label");
        const double value = parse_value(row.substr(comma + 1), line_no);

        auto [it, inserted] = index.try_emplace(label, labels.size());
        if (inserted) {
            labels.push_back(label);
            columns.emplace_back();
        }
        columns[it->second].push_back(value);
    }

    if (labels.empty())
        raise(ErrorKind::EmptyInput, "no observations");
    if (labels.size() < 2)
        raise(ErrorKind::TooFewGroups, "need at least 2 groups, got " + std::to_string(labels.size()));

    const std::size_t n_reps = columns.front().size();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].size() != n_reps)
            raise(ErrorKind::UnbalancedDesign,
                  "group '" + labels[i] + "' has " + std::to_string(columns[i].size()) +
                      " observations, expected " + std::to_string(n_reps));
    }
    if (n_reps < 2)
        raise(ErrorKind::TooFewReplicates,
              "need at least 2 replicates per group, got " + std::to_string(n_reps));

    BalancedOneWayData data;
    data.group_labels = std::move(labels);
    data.values.reserve(data.group_labels.size() * n_reps);
    for (const auto& column : columns)
        data.values.insert(data.values.end(), column.begin(), column.end());
    return data;
}

BalancedOneWayData load_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::EmptyInput, "cannot open '" + path + "'");
    return load_csv(in);
}

GroupSummary summarize(const BalancedOneWayData& data) {
    GroupSummary summary;
    const int n_i = data.n_groups();
    const double n_j = static_cast<double>(data.n_reps());
    summary.group_means.resize(static_cast<std::size_t>(n_i));
    for (int i = 0; i < n_i; ++i)
        summary.group_means[static_cast<std::size_t>(i)] = kernels::sum(data.group(i)) / n_j;
    summary.grand_mean = kernels::sum(data.values) / static_cast<double>(data.n_total());
    return summary;
}

} // namespace banova
