#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <json.hpp>

namespace banova {

enum class RegionKind { RelativeLikelihood, HpdDensity };

struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 100;
};

struct GridSpec {
    AxisSpec sigma_alpha;
    AxisSpec sigma_eps;
};

// Dense 2-D field over (sigma_alpha, sigma_eps), both in sd units, plus the
// per-confidence-level thresholds that downstream contouring applies to it.
struct RegionGrid {
    std::vector<double> sigma_alpha_axis;
    std::vector<double> sigma_eps_axis;
    std::vector<double> values; // row-major: [alpha][eps]
    std::vector<std::pair<double, double>> contour_levels; // (confidence, threshold)
    RegionKind kind = RegionKind::RelativeLikelihood;

    double at(std::size_t ia, std::size_t ie) const {
        return values[ia * sigma_eps_axis.size() + ie];
    }
};

const char* region_kind_name(RegionKind kind);

// Long-form CSV (sigma_alpha, sigma_eps, value) preceded by `#` metadata
// lines carrying the kind and contour thresholds.
void write_region_csv(std::ostream& out, const RegionGrid& grid);

nlohmann::json region_to_json(const RegionGrid& grid);

} // namespace banova
