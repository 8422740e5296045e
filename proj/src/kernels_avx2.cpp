#include "banova/kernels.hpp"

// AVX2 variants.  Compiled with -mavx2 -mno-fma -ffp-contract=off: each
// 256-bit lane performs exactly the per-lane IEEE add/sub/mul sequence of
// the scalar reference, tails and the final lane combine included, so the
// two backends agree bit for bit.

#if defined(BANOVA_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace banova::kernels {
namespace {

double sum_avx2(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    __m256d vacc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < nb; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x.data() + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t j = 0; j < n - nb; ++j)
        acc[j] += x[nb + j];
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sum_sq_dev_avx2(std::span<const double> x, double center) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    const __m256d vc = _mm256_set1_pd(center);
    __m256d vacc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < nb; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), vc);
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(d, d));
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t j = 0; j < n - nb; ++j) {
        const double d = x[nb + j] - center;
        acc[j] += d * d;
    }
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

void sqrt_all_avx2(std::span<const double> in, std::span<double> out) noexcept {
    const std::size_t n = in.size();
    const std::size_t nb = n - n % 4;
    for (std::size_t i = 0; i < nb; i += 4)
        _mm256_storeu_pd(out.data() + i, _mm256_sqrt_pd(_mm256_loadu_pd(in.data() + i)));
    for (std::size_t j = nb; j < n; ++j)
        out[j] = std::sqrt(in[j]);
}

std::size_t count_greater_avx2(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const std::size_t nb = n - n % 4;
    std::size_t count = 0;
    for (std::size_t i = 0; i < nb; i += 4) {
        const __m256d va = _mm256_loadu_pd(a.data() + i);
        const __m256d vb = _mm256_loadu_pd(b.data() + i);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(va, vb, _CMP_GT_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (std::size_t j = nb; j < n; ++j)
        count += a[j] > b[j] ? 1u : 0u;
    return count;
}

std::size_t count_equal_avx2(std::span<const double> x, double value) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    const __m256d vv = _mm256_set1_pd(value);
    std::size_t count = 0;
    for (std::size_t i = 0; i < nb; i += 4) {
        const int mask =
            _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(x.data() + i), vv, _CMP_EQ_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (std::size_t j = nb; j < n; ++j)
        count += x[j] == value ? 1u : 0u;
    return count;
}

double max_value_avx2(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const std::size_t nb = n - n % 4;
    const double ninf = -std::numeric_limits<double>::infinity();
    __m256d vacc = _mm256_set1_pd(ninf);
    for (std::size_t i = 0; i < nb; i += 4)
        vacc = _mm256_max_pd(vacc, _mm256_loadu_pd(x.data() + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t j = 0; j < n - nb; ++j)
        acc[j] = acc[j] < x[nb + j] ? x[nb + j] : acc[j];
    const double m02 = acc[0] < acc[2] ? acc[2] : acc[0];
    const double m13 = acc[1] < acc[3] ? acc[3] : acc[1];
    return m02 < m13 ? m13 : m02;
}

} // namespace

namespace detail {

const KernelTable& avx2_table() noexcept {
    static const KernelTable table{
        sum_avx2,     sum_sq_dev_avx2, sqrt_all_avx2,
        count_greater_avx2, count_equal_avx2, max_value_avx2,
    };
    return table;
}

} // namespace detail
} // namespace banova::kernels

#endif // BANOVA_HAVE_AVX2
