#include "banova/region.hpp"

#include <cstdio>
#include <ostream>

namespace banova {

namespace {

std::string full_precision(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

const char* region_kind_name(RegionKind kind) {
    return kind == RegionKind::RelativeLikelihood ? "relative_likelihood" : "hpd_density";
}

void write_region_csv(std::ostream& out, const RegionGrid& grid) {
    out << "# kind: " << region_kind_name(grid.kind) << "\n";
    for (const auto& [level, threshold] : grid.contour_levels)
        out << "# level: " << full_precision(level) << " threshold: " << full_precision(threshold)
            << "\n";
    out << "sigma_alpha,sigma_eps,value\n";
    for (std::size_t ia = 0; ia < grid.sigma_alpha_axis.size(); ++ia)
        for (std::size_t ie = 0; ie < grid.sigma_eps_axis.size(); ++ie)
            out << full_precision(grid.sigma_alpha_axis[ia]) << ','
                << full_precision(grid.sigma_eps_axis[ie]) << ','
                << full_precision(grid.at(ia, ie)) << "\n";
}

nlohmann::json region_to_json(const RegionGrid& grid) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& [level, threshold] : grid.contour_levels)
        levels.push_back({{"level", level}, {"threshold", threshold}});

    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t ia = 0; ia < grid.sigma_alpha_axis.size(); ++ia) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t ie = 0; ie < grid.sigma_eps_axis.size(); ++ie)
            row.push_back(grid.at(ia, ie));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"kind", region_kind_name(grid.kind)},
                          {"sigma_alpha_axis", grid.sigma_alpha_axis},
                          {"sigma_eps_axis", grid.sigma_eps_axis},
                          {"values", std::move(rows)},
                          {"levels", std::move(levels)}};
}

} // namespace banova
