#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_bat(const Objective& objective, const OptimizerConfig& config, const BatParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "BAT");
    auto bats = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();
    std::vector<std::vector<double>> velocity(n, std::vector<double>(dim, 0.0));
    std::vector<double> candidate(dim);

    for (std::size_t t = 0; t < config.iterations; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            // Best is read per bat: improvements by earlier bats steer later ones.
            const auto best = tracker.best_position();
            const double q = p.q_min + (p.q_max - p.q_min) * rng.uniform();
            for (std::size_t j = 0; j < dim; ++j) {
                velocity[i][j] += (bats.x[i][j] - best[j]) * q;
                candidate[j] = bats.x[i][j] + velocity[i][j];
            }
            if (rng.uniform() > p.pulse_rate) {
                for (std::size_t j = 0; j < dim; ++j) {
                    candidate[j] = best[j] + 0.001 * rng.normal();
                }
            }
            config.bounds.clamp(candidate);
            const double f = tracker.evaluate(candidate);
            if (f <= bats.f[i] && rng.uniform() < p.loudness) {
                bats.x[i] = candidate;
                bats.f[i] = f;
            }
        }
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
