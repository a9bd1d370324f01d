#pragma once

/// Chaos Game Optimization.
///
/// Each iteration builds, for every eligible seed S_k, a temporary triangle
/// (S_k, G, M_k) from the seed, the global best G and a Mean Group M_k, and
/// throws four new seeds from it:
///
///   P1 = S_k + a * (b * G   - c * M_k)
///   P2 = G   + a * (b * S_k - c * M_k)
///   P3 = M_k + a * (b * S_k - c * G)
///   P4 = S_k with a random non-empty subset of coordinates shifted by U[0,1)
///
/// a is drawn from one of four movement-limit formulas, b and c are random
/// integers from `beta_gamma_range`. New seeds are clamped to the search box,
/// then the population and all 4*D new seeds are pooled and the D fittest are
/// kept (ties favour older members).

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cgofs/core.hpp"
#include "cgofs/optimizer.hpp"
#include "cgofs/rng.hpp"

namespace cgofs::cgo {

struct IntRange {
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
};

struct CgoConfig : OptimizerConfig {
    IntRange beta_gamma_range{1, 2};

    void validate() const;
};

/// D agents with coordinates rand*(U-L)+L and no fitness yet.
[[nodiscard]] std::vector<Agent> init_population(const CgoConfig& config, RandomSource& rng);

/// Indices of a Mean Group: the size is uniform in [1, n], the members a
/// uniformly random subset of that size (ascending order).
[[nodiscard]] std::vector<std::size_t> mean_group_indices(std::size_t population_size, RandomSource& rng);

/// Per-coordinate mean of the positions at `indices`.
[[nodiscard]] std::vector<double> mean_of(std::span<const Agent> population, std::span<const std::size_t> indices);

/// M_k for agent `k_index`. The draw does not depend on `k_index`; it is part
/// of the signature because every agent gets its own group.
[[nodiscard]] std::vector<double> mean_group(std::span<const Agent> population, std::size_t k_index,
                                             RandomSource& rng);

/// Value of movement-limit formula `branch` (0..3): R, 2R, eR+1, eR+e.
[[nodiscard]] double alpha_formula(int branch, double r, double epsilon) noexcept;

struct AlphaDraw {
    int branch = 0;
    double value = 0.0;
};

/// Picks a formula uniformly, then draws R and e uniformly in [0,1).
[[nodiscard]] AlphaDraw sample_alpha_draw(RandomSource& rng);
[[nodiscard]] inline double sample_alpha(RandomSource& rng) { return sample_alpha_draw(rng).value; }

/// base + alpha*(beta*toward - gamma*away), unclamped.
[[nodiscard]] std::vector<double> triangle_seed(std::span<const double> base, std::span<const double> toward,
                                                std::span<const double> away, double alpha, double beta,
                                                double gamma);

/// The four candidate positions of one temporary triangle, already clamped.
[[nodiscard]] std::array<std::vector<double>, 4> generate_seeds(std::span<const double> seed,
                                                                std::span<const double> global_best,
                                                                std::span<const double> mean_group,
                                                                RandomSource& rng, const CgoConfig& config);

[[nodiscard]] RunResult optimize(const Objective& objective, const CgoConfig& config, RandomSource& rng);

} // namespace cgofs::cgo
