#include <cmath>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

namespace {

/// Fitness-proportional pick over sorted universes, better ones weighted
/// higher: w_i = (f_worst - f_i) + eps.
std::size_t white_hole(const std::vector<double>& sorted_f, RandomSource& rng) {
    const double worst = sorted_f.back();
    double total = 0.0;
    for (double f : sorted_f) {
        total += (worst - f) + 1e-12;
    }
    double ball = rng.uniform() * total;
    for (std::size_t i = 0; i < sorted_f.size(); ++i) {
        ball -= (worst - sorted_f[i]) + 1e-12;
        if (ball < 0.0) {
            return i;
        }
    }
    return sorted_f.size() - 1;
}

} // namespace

RunResult optimize_mvo(const Objective& objective, const OptimizerConfig& config, const MvoParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "MVO");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();
    const double lb = config.bounds.lower();
    const double width = config.bounds.width();
    const double horizon = static_cast<double>(config.iterations);

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double time = static_cast<double>(t + 1);
        const double wep = p.wep_min + time * (p.wep_max - p.wep_min) / horizon;
        const double tdr = 1.0 - std::pow(time, 1.0 / p.tdr_exponent) / std::pow(horizon, 1.0 / p.tdr_exponent);

        const auto order = detail::argsort(swarm.f);
        std::vector<std::vector<double>> sorted(n);
        std::vector<double> sorted_f(n);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sorted[i] = swarm.x[order[i]];
            sorted_f[i] = swarm.f[order[i]];
            norm += sorted_f[i] * sorted_f[i];
        }
        norm = std::sqrt(norm);

        const auto& best = tracker.best_position();
        swarm.x = sorted;
        for (std::size_t i = 1; i < n; ++i) {
            const double inflation = norm > 0.0 ? sorted_f[i] / norm : 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                if (rng.uniform() < inflation) {
                    swarm.x[i][j] = sorted[white_hole(sorted_f, rng)][j];
                }
                if (rng.uniform() < wep) {
                    const double r3 = rng.uniform();
                    const double step = tdr * (width * rng.uniform() + lb);
                    swarm.x[i][j] = r3 < 0.5 ? best[j] + step : best[j] - step;
                }
            }
            config.bounds.clamp(swarm.x[i]);
        }
        detail::evaluate_all(swarm, tracker);
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
