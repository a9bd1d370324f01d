#include <algorithm>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_pso(const Objective& objective, const OptimizerConfig& config, const PsoParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "PSO");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();

    std::vector<std::vector<double>> velocity(n, std::vector<double>(dim, 0.0));
    auto pbest = swarm.x;
    auto pbest_f = swarm.f;

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double w = p.wmax - (p.wmax - p.wmin) * detail::progress(t, config.iterations);
        const auto& gbest = tracker.best_position();
        for (std::size_t i = 0; i < n; ++i) {
            auto& x = swarm.x[i];
            auto& v = velocity[i];
            for (std::size_t j = 0; j < dim; ++j) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                v[j] = w * v[j] + p.c1 * r1 * (pbest[i][j] - x[j]) + p.c2 * r2 * (gbest[j] - x[j]);
                v[j] = std::clamp(v[j], -p.vmax, p.vmax);
                x[j] += v[j];
            }
            config.bounds.clamp(x);
        }
        detail::evaluate_all(swarm, tracker);
        for (std::size_t i = 0; i < n; ++i) {
            if (swarm.f[i] < pbest_f[i]) {
                pbest_f[i] = swarm.f[i];
                pbest[i] = swarm.x[i];
            }
        }
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
