#include "banova/rng.hpp"

namespace banova {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t RngStream::mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
    // Avalanche both halves so nearby (seed, stream) pairs land on unrelated
    // counter bases.
    state_ = mix64(seed + kGolden) ^ mix64(stream_id * 0xDA942042E4DD58B5ull + 0x8BB84B93962EACC9ull);
}

std::uint64_t RngStream::next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::next_unit() noexcept {
    // 53 random bits, offset by half an ulp: strictly inside (0, 1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) noexcept {
    std::uint64_t z = RngStream::mix64(seed + kGolden);
    z = RngStream::mix64(z ^ (tag_a * 0xDA942042E4DD58B5ull + 0x8BB84B93962EACC9ull));
    z = RngStream::mix64(z ^ (tag_b * 0xC2B2AE3D27D4EB4Full + 0x165667B19E3779F9ull));
    return z;
}

} // namespace banova
