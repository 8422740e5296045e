#pragma once

#include <cstdint>

namespace banova {

// Splittable counter-based stream built on the SplitMix64 output function
// (Steele, Lea & Flood 2014; finalizer constants due to Vigna).  A stream is
// fully determined by (seed, stream_id): the k-th output is
// mix(base(seed, stream_id) + k * GOLDEN), so the same pair reproduces the
// same sequence on any thread layout, and disjoint stream ids give
// statistically independent sequences.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform draw strictly inside (0, 1); never returns 0 or 1.
    double next_unit() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    static std::uint64_t mix64(std::uint64_t z) noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
};

// Deterministically derives a child seed from a parent seed and two tags.
// Used to decouple nested simulation units (case / replicate / purpose).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) noexcept;

} // namespace banova
