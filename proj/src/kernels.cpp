#include "banova/kernels.hpp"

namespace banova::kernels {
namespace {

struct Dispatch {
    Backend backend;
    const detail::KernelTable* table;
};

Dispatch make_default() noexcept {
#if defined(BANOVA_HAVE_AVX2)
    if (avx2_available())
        return {Backend::Avx2, &detail::avx2_table()};
#endif
    return {Backend::Scalar, &detail::scalar_table()};
}

Dispatch& dispatch() noexcept {
    static Dispatch d = make_default();
    return d;
}

} // namespace

bool avx2_available() noexcept {
#if defined(BANOVA_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() noexcept { return dispatch().backend; }

Backend set_backend(Backend backend) noexcept {
    if (backend == Backend::Avx2 && avx2_available()) {
#if defined(BANOVA_HAVE_AVX2)
        dispatch() = {Backend::Avx2, &detail::avx2_table()};
#endif
    } else {
        dispatch() = {Backend::Scalar, &detail::scalar_table()};
    }
    return dispatch().backend;
}

double sum(std::span<const double> x) noexcept { return dispatch().table->sum(x); }

double sum_sq_dev(std::span<const double> x, double center) noexcept {
    return dispatch().table->sum_sq_dev(x, center);
}

void sqrt_all(std::span<const double> in, std::span<double> out) noexcept {
    dispatch().table->sqrt_all(in, out);
}

std::size_t count_greater(std::span<const double> a, std::span<const double> b) noexcept {
    return dispatch().table->count_greater(a, b);
}

std::size_t count_equal(std::span<const double> x, double value) noexcept {
    return dispatch().table->count_equal(x, value);
}

double max_value(std::span<const double> x) noexcept { return dispatch().table->max_value(x); }

} // namespace banova::kernels
