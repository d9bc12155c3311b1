// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace augaudit {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// FNV-1a, 64-bit.
constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t hash = kFnvOffset) noexcept {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= kFnvPrime;
    }
    return hash;
}

/*
 * SplitMix64 (Steele, Lea, Flood). Every random decision in the toolkit is
 * drawn from one of these streams so results are reproducible bit for bit in
 * any language that implements the same three-line mixer.
 */
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += kGoldenGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t operator()() noexcept { return next(); }

    /// Integer in [lo, hi] as `lo + next() % (hi - lo + 1)`. Requires lo <= hi.
    constexpr std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Index in [0, n). Requires n > 0.
    constexpr std::size_t index(std::size_t n) noexcept {
        return static_cast<std::size_t>(next() % n);
    }

    /// Real in [0, 1) from the top 53 bits.
    constexpr double unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Seed of the per-case augmentation stream.
constexpr std::uint64_t case_stream_seed(std::uint64_t global_seed, std::string_view case_id,
                                         std::uint64_t variant_index) noexcept {
    return global_seed ^ fnv1a64(case_id) ^ (variant_index * kGoldenGamma);
}

/// Stage-local seed: first output of SplitMix64(seed ^ fnv1a64(salt)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt) noexcept {
    SplitMix64 rng(seed ^ fnv1a64(salt));
    return rng.next();
}

}  // namespace augaudit
