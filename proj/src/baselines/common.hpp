#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "cgofs/optimizer.hpp"

namespace cgofs::baselines::detail {

/// Position/fitness pairs of a population.
struct Swarm {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

inline Swarm init_swarm(const OptimizerConfig& config, RandomSource& rng, EvaluationTracker& tracker) {
    Swarm s;
    s.x.reserve(config.population);
    for (std::size_t i = 0; i < config.population; ++i) {
        s.x.push_back(random_position(config.bounds, rng));
    }
    s.f.reserve(config.population);
    for (const auto& p : s.x) {
        s.f.push_back(tracker.evaluate(p));
    }
    return s;
}

inline void evaluate_all(Swarm& s, EvaluationTracker& tracker) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        s.f[i] = tracker.evaluate(s.x[i]);
    }
}

/// Indices sorted by ascending fitness; stable.
inline std::vector<std::size_t> argsort(const std::vector<double>& f) {
    std::vector<std::size_t> idx(f.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    return idx;
}

/// t / (T - 1) for t in [0, T); 0 when T == 1.
inline double progress(std::size_t t, std::size_t iterations) {
    return iterations > 1 ? static_cast<double>(t) / static_cast<double>(iterations - 1) : 0.0;
}

} // namespace cgofs::baselines::detail
