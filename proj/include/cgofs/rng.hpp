#pragma once

#include <array>
#include <cstdint>

namespace cgofs {

/// SplitMix64 finalizer. Used for seeding and for deriving substream seeds.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed of the independent substream `stream_id` under `seed`. The mapping is
/// fixed, so a (seed, stream) pair names the same stream on every platform.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept;

/// Deterministic random stream: xoshiro256** seeded through SplitMix64.
///
/// Every derived quantity is computed with integer arithmetic or IEEE double
/// operations that do not depend on the standard library's distribution
/// classes, so sequences reproduce bit-for-bit across compilers.
///
/// A RandomSource has a single owner. Parallel code takes `substream()`s
/// instead of sharing one instance.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) noexcept;

    [[nodiscard]] static RandomSource substream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
        return RandomSource(derive_seed(seed, stream_id));
    }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in the closed range [lo, hi]; unbiased (rejection).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n) noexcept { return static_cast<std::size_t>(uniform_int(0, n - 1)); }

    /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal() noexcept;

    double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

} // namespace cgofs
