#include <cmath>
#include <limits>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

RunResult optimize_hgs(const Objective& objective, const OptimizerConfig& config, const HgsParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "HGS");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t n = config.population;
    const std::size_t dim = config.bounds.dim();
    const double width = config.bounds.width();

    std::vector<double> hunger(n, 0.0);
    double worst_ever = -std::numeric_limits<double>::infinity();

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double best_f = tracker.best_fitness();
        for (double f : swarm.f) {
            worst_ever = std::max(worst_ever, f);
        }

        // Leaders: members currently sitting on the best fitness, else G itself.
        std::vector<std::vector<double>> leaders;
        for (std::size_t i = 0; i < n; ++i) {
            if (swarm.f[i] == best_f) {
                leaders.push_back(swarm.x[i]);
            }
        }
        if (leaders.empty()) {
            leaders.push_back(tracker.best_position());
        }

        std::vector<double> vc1(n);
        double hunger_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            vc1[i] = 1.0 / std::cosh(std::abs(swarm.f[i] - best_f));
            if (swarm.f[i] == best_f) {
                hunger[i] = 0.0;
                continue;
            }
            const double r = rng.uniform();
            const double spread = worst_ever - best_f;
            const double c = spread > 0.0 ? (swarm.f[i] - best_f) / spread * r * 2.0 * width : 0.0;
            hunger[i] += c < p.hunger_threshold ? p.hunger_threshold * (1.0 + r) : c;
            hunger_sum += hunger[i];
        }

        const double shrink = 2.0 * (1.0 - static_cast<double>(t + 1) / static_cast<double>(config.iterations));
        for (std::size_t i = 0; i < n; ++i) {
            auto& x = swarm.x[i];
            if (rng.uniform() < p.vc2) {
                const double factor = 1.0 + rng.normal();
                for (double& v : x) {
                    v *= factor;
                }
            } else {
                const auto& leader = leaders[rng.index(leaders.size())];
                for (std::size_t j = 0; j < dim; ++j) {
                    const double w3 = (1.0 - std::exp(-std::abs(hunger[i] - hunger_sum))) * rng.uniform() * 2.0;
                    double w4 = 1.0;
                    if (rng.uniform() < p.vc2 && hunger_sum > 0.0) {
                        w4 = hunger[i] * static_cast<double>(n) / hunger_sum * rng.uniform();
                    }
                    const double r = rng.uniform();
                    const double vb = 2.0 * shrink * r - shrink;
                    const double pull = vb * w3 * std::abs(leader[j] - x[j]);
                    x[j] = r > vc1[i] ? w4 * leader[j] + pull : w4 * leader[j] - pull;
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
