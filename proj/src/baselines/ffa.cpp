#include <cmath>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_ffa(const Objective& objective, const OptimizerConfig& config, const FfaParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "FFA");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();
    const double scale = config.bounds.width();

    // Randomness shrinks geometrically so alpha ends near 1e-4/0.9 of its start.
    const double delta = 1.0 - std::pow(1e-4 / 0.9, 1.0 / static_cast<double>(config.iterations));
    double alpha = p.alpha;

    for (std::size_t t = 0; t < config.iterations; ++t) {
        alpha *= (1.0 - delta);
        const auto order = detail::argsort(swarm.f);
        std::vector<std::vector<double>> old(n);
        std::vector<double> light(n);
        for (std::size_t i = 0; i < n; ++i) {
            old[i] = swarm.x[order[i]];
            light[i] = swarm.f[order[i]];
        }
        swarm.x = old;

        for (std::size_t i = 0; i < n; ++i) {
            auto& x = swarm.x[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (!(light[j] < light[i])) {
                    continue;
                }
                double r2 = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    const double diff = x[d] - old[j][d];
                    r2 += diff * diff;
                }
                const double beta = (p.beta0 - p.beta_min) * std::exp(-p.gamma * r2) + p.beta_min;
                for (std::size_t d = 0; d < dim; ++d) {
                    x[d] = x[d] * (1.0 - beta) + old[j][d] * beta + alpha * (rng.uniform() - 0.5) * scale;
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
