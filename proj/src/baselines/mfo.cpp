#include <cmath>
#include <numbers>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_mfo(const Objective& objective, const OptimizerConfig& config, const MfoParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "MFO");
    auto moths = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();
    const double horizon = static_cast<double>(config.iterations);

    detail::Swarm flames;
    for (std::size_t i : detail::argsort(moths.f)) {
        flames.x.push_back(moths.x[i]);
        flames.f.push_back(moths.f[i]);
    }

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double time = static_cast<double>(t + 1);
        const auto flame_count = static_cast<std::size_t>(
            std::lround(static_cast<double>(n) - time * static_cast<double>(n - 1) / horizon));
        const double lower = p.l_lo - time / horizon;

        for (std::size_t i = 0; i < n; ++i) {
            const auto& flame = flames.x[std::min(i, flame_count > 0 ? flame_count - 1 : 0)];
            auto& x = moths.x[i];
            for (std::size_t j = 0; j < dim; ++j) {
                const double dist = std::abs(flame[j] - x[j]);
                const double s = (lower - p.l_hi) * rng.uniform() + p.l_hi;
                x[j] = dist * std::exp(p.b * s) * std::cos(2.0 * std::numbers::pi * s) + flame[j];
            }
            config.bounds.clamp(x);
        }
        detail::evaluate_all(moths, tracker);

        // Flames are the best n of the current moths and the previous flames.
        detail::Swarm merged = flames;
        merged.x.insert(merged.x.end(), moths.x.begin(), moths.x.end());
        merged.f.insert(merged.f.end(), moths.f.begin(), moths.f.end());
        const auto order = detail::argsort(merged.f);
        for (std::size_t i = 0; i < n; ++i) {
            flames.x[i] = merged.x[order[i]];
            flames.f[i] = merged.f[order[i]];
        }
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
