// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

namespace elbokit {

/// Counter-based pseudorandom source.
///
/// The k-th 64-bit word of a stream is `mix(seed + (k + 1) * 0x9E3779B97F4A7C15)`
/// where `mix` is the SplitMix64 finalizer (Steele, Lea & Flood 2014). Because
/// the state is just (seed, counter), streams are reproducible on any platform
/// with IEEE-754 doubles and can be positioned without replaying.
///
/// Uniforms take the top 53 bits. Standard normals use the Box-Muller
/// transform on two consecutive uniforms; the second variate of each pair is
/// cached and returned by the next call.
///
/// An RngState has a single owner. Concurrent consumers derive independent
/// streams with `split`.
class RngState {
public:
    explicit RngState(std::uint64_t seed = 0) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform in [0, 1).
    double uniform() noexcept;

    /// Uniform in (0, 1]. Safe to take the log of.
    double uniform_open_low() noexcept;

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Standard normal draw.
    double normal() noexcept;

    /// Fresh stream with seed `seed() ^ stream_id`.
    RngState split(std::uint64_t stream_id) const noexcept { return RngState(seed_ ^ stream_id); }

    friend bool operator==(const RngState&, const RngState&) = default;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_normal_;
};

/// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace elbokit
