#include <cmath>
#include <numbers>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_woa(const Objective& objective, const OptimizerConfig& config, const WoaParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "WOA");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double progress = detail::progress(t, config.iterations);
        const double a = p.a * (1.0 - progress);
        const double a2 = -1.0 - progress;
        const auto leader = tracker.best_position();
        const auto snapshot = swarm.x;

        for (std::size_t i = 0; i < n; ++i) {
            const double r1 = p.r * rng.uniform();
            const double r2 = p.r * rng.uniform();
            const double A = 2.0 * a * r1 - a;
            const double C = 2.0 * r2;
            const double l = (a2 - 1.0) * rng.uniform() + 1.0;
            const double prob = rng.uniform();
            auto& x = swarm.x[i];
            if (prob < 0.5) {
                const auto& target = std::abs(A) >= 1.0 ? snapshot[rng.index(n)] : leader;
                for (std::size_t j = 0; j < dim; ++j) {
                    x[j] = target[j] - A * std::abs(C * target[j] - x[j]);
                }
            } else {
                for (std::size_t j = 0; j < dim; ++j) {
                    const double dist = std::abs(leader[j] - x[j]);
                    x[j] = dist * std::exp(p.spiral_b * l) * std::cos(2.0 * std::numbers::pi * l) + leader[j];
                }
            }
            config.bounds.clamp(x);
        }
        detail::evaluate_all(swarm, tracker);
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
