#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgofs/core.hpp"
#include "cgofs/rng.hpp"

namespace cgofs {

/// Fitness of a continuous position; lower is better. Must be deterministic
/// and safe to call concurrently.
using Objective = std::function<double(std::span<const double>)>;

/// Settings shared by every optimizer.
struct OptimizerConfig {
    std::size_t population = 50;
    std::size_t iterations = 100;
    SearchBounds bounds;
    /// Cut-off used to turn the best position into RunResult::best_mask.
    double mask_threshold = 0.5;

    /// Throws InvalidArgument when population < 2 or iterations < 1.
    void validate() const;
};

enum class Algorithm { CGO, PSO, MVO, GWO, MFO, WOA, FFA, BAT, HGS };

/// Canonical order used for reporting.
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::CGO, Algorithm::PSO, Algorithm::MVO,
                                               Algorithm::GWO, Algorithm::MFO, Algorithm::WOA,
                                               Algorithm::FFA, Algorithm::BAT, Algorithm::HGS};

[[nodiscard]] std::string_view to_string(Algorithm algorithm) noexcept;
/// Case-insensitive. Throws UnknownAlgorithm.
[[nodiscard]] Algorithm parse_algorithm(std::string_view name);

/// Counts objective calls, rejects non-finite values, and keeps the
/// best-so-far record that every optimizer reports. The trace it produces is
/// non-increasing by construction.
class EvaluationTracker {
public:
    EvaluationTracker(const Objective& objective, const OptimizerConfig& config, std::uint64_t seed,
                      std::string optimizer_name);

    /// Evaluates and records `position`. Throws ObjectiveNonFinite.
    double evaluate(std::span<const double> position);

    /// Closes one iteration by appending the current best to the trace.
    void end_iteration();

    [[nodiscard]] double best_fitness() const noexcept { return best_fitness_; }
    [[nodiscard]] const std::vector<double>& best_position() const noexcept { return best_position_; }
    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

    [[nodiscard]] RunResult finish() const;

private:
    const Objective& objective_;
    const OptimizerConfig& config_;
    std::uint64_t seed_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    std::size_t evaluations_ = 0;
    double best_fitness_;
    std::vector<double> best_position_;
    std::vector<double> trace_;
};

/// Uniform random position in the search box: rand*(U-L)+L per coordinate.
[[nodiscard]] std::vector<double> random_position(const SearchBounds& bounds, RandomSource& rng);

} // namespace cgofs
