#include "banova/kernels.hpp"

#include <cmath>
#include <limits>

// Reference kernels.  The 4-lane blocked accumulation mirrors the vector
// variants lane for lane, which is what makes the backends bit-identical.
// Compiled with -ffp-contract=off so no multiply-add fusion sneaks in.

namespace banova::kernels {
namespace {

double sum_scalar(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < nb; i += 4) {
        acc[0] += x[i];
        acc[1] += x[i + 1];
        acc[2] += x[i + 2];
        acc[3] += x[i + 3];
    }
    for (std::size_t j = 0; j < n - nb; ++j)
        acc[j] += x[nb + j];
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sum_sq_dev_scalar(std::span<const double> x, double center) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < nb; i += 4) {
        const double d0 = x[i] - center;
        const double d1 = x[i + 1] - center;
        const double d2 = x[i + 2] - center;
        const double d3 = x[i + 3] - center;
        acc[0] += d0 * d0;
        acc[1] += d1 * d1;
        acc[2] += d2 * d2;
        acc[3] += d3 * d3;
    }
    for (std::size_t j = 0; j < n - nb; ++j) {
        const double d = x[nb + j] - center;
        acc[j] += d * d;
    }
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

void sqrt_all_scalar(std::span<const double> in, std::span<double> out) noexcept {
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = std::sqrt(in[i]);
}

std::size_t count_greater_scalar(std::span<const double> a, std::span<const double> b) noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        count += a[i] > b[i] ? 1u : 0u;
    return count;
}

std::size_t count_equal_scalar(std::span<const double> x, double value) noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        count += x[i] == value ? 1u : 0u;
    return count;
}

double max_value_scalar(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    const double ninf = -std::numeric_limits<double>::infinity();
    double acc[4] = {ninf, ninf, ninf, ninf};
    for (std::size_t i = 0; i < nb; i += 4) {
        acc[0] = acc[0] < x[i] ? x[i] : acc[0];
        acc[1] = acc[1] < x[i + 1] ? x[i + 1] : acc[1];
        acc[2] = acc[2] < x[i + 2] ? x[i + 2] : acc[2];
        acc[3] = acc[3] < x[i + 3] ? x[i + 3] : acc[3];
    }
    for (std::size_t j = 0; j < n - nb; ++j)
        acc[j] = acc[j] < x[nb + j] ? x[nb + j] : acc[j];
    const double m02 = acc[0] < acc[2] ? acc[2] : acc[0];
    const double m13 = acc[1] < acc[3] ? acc[3] : acc[1];
    return m02 < m13 ? m13 : m02;
}

} // namespace

namespace detail {

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{
        sum_scalar,     sum_sq_dev_scalar, sqrt_all_scalar,
        count_greater_scalar, count_equal_scalar, max_value_scalar,
    };
    return table;
}

} // namespace detail
} // namespace banova::kernels
