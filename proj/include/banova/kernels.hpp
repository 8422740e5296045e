#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the statistical layers.  Every kernel
// has a scalar reference implementation and, on x86-64 with AVX2, a vector
// variant selected once at startup.  Both paths run the identical sequence
// of IEEE operations (4 independent accumulator lanes, no FMA), so results
// are bit-for-bit equal across backends; the equivalence tests assert exact
// equality rather than a tolerance.

namespace banova::kernels {

enum class Backend { Scalar, Avx2 };

// Backend picked at startup from CPU capabilities.
Backend active_backend() noexcept;

// Force a backend (tests only).  Requesting Avx2 on a CPU without it is a
// no-op; returns the backend actually in effect.
Backend set_backend(Backend backend) noexcept;

bool avx2_available() noexcept;

// Sum of all elements (4-lane blocked accumulation).
double sum(std::span<const double> x) noexcept;

// Sum of squared deviations from `center` (4-lane blocked accumulation).
double sum_sq_dev(std::span<const double> x, double center) noexcept;

// Element-wise square root; in and out may alias.
void sqrt_all(std::span<const double> in, std::span<double> out) noexcept;

// Number of indices with a[i] > b[i]; spans must have equal length.
std::size_t count_greater(std::span<const double> a, std::span<const double> b) noexcept;

// Number of elements equal to `value` (exact comparison).
std::size_t count_equal(std::span<const double> x, double value) noexcept;

// Largest element; returns -inf for an empty span.
double max_value(std::span<const double> x) noexcept;

namespace detail {

struct KernelTable {
    double (*sum)(std::span<const double>) noexcept;
    double (*sum_sq_dev)(std::span<const double>, double) noexcept;
    void (*sqrt_all)(std::span<const double>, std::span<double>) noexcept;
    std::size_t (*count_greater)(std::span<const double>, std::span<const double>) noexcept;
    std::size_t (*count_equal)(std::span<const double>, double) noexcept;
    double (*max_value)(std::span<const double>) noexcept;
};

const KernelTable& scalar_table() noexcept;
const KernelTable& avx2_table() noexcept; // valid only when avx2_available()

} // namespace detail

} // namespace banova::kernels
