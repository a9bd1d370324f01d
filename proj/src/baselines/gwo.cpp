#include <cmath>
#include <limits>

#include "cgofs/baselines.hpp"
#include "common.hpp"

namespace cgofs::baselines {

namespace {

struct Pack {
    std::vector<double> pos[3];
    double score[3] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};

    void offer(const std::vector<double>& x, double f) {
        if (f < score[0]) {
            score[2] = score[1];
            pos[2] = pos[1];
            score[1] = score[0];
            pos[1] = pos[0];
            score[0] = f;
            pos[0] = x;
        } else if (f < score[1]) {
            score[2] = score[1];
            pos[2] = pos[1];
            score[1] = f;
            pos[1] = x;
        } else if (f < score[2]) {
            score[2] = f;
            pos[2] = x;
        }
    }

    // With fewer than three distinct scores the missing leaders follow alpha.
    void fill() {
        for (int k = 1; k < 3; ++k) {
            if (pos[k].empty()) {
                pos[k] = pos[k - 1];
            }
        }
    }
};

} // namespace

RunResult optimize_gwo(const Objective& objective, const OptimizerConfig& config, const GwoParams& p,
                       RandomSource& rng) {
    EvaluationTracker tracker(objective, config, rng.seed(), "GWO");
    auto swarm = detail::init_swarm(config, rng, tracker);
    const std::size_t dim = config.bounds.dim();

    Pack pack;
    for (std::size_t i = 0; i < swarm.x.size(); ++i) {
        pack.offer(swarm.x[i], swarm.f[i]);
    }
    pack.fill();

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double a = p.a * (1.0 - detail::progress(t, config.iterations));
        for (auto& x : swarm.x) {
            for (std::size_t j = 0; j < dim; ++j) {
                double sum = 0.0;
                for (const auto& leader : pack.pos) {
                    const double A = a * rng.uniform(p.r_lo, p.r_hi);
                    const double C = 2.0 * rng.uniform();
                    const double dist = std::abs(C * leader[j] - x[j]);
                    sum += leader[j] - A * dist;
                }
                x[j] = sum / 3.0;
            }
            config.bounds.clamp(x);
        }
        detail::evaluate_all(swarm, tracker);
        for (std::size_t i = 0; i < swarm.x.size(); ++i) {
            pack.offer(swarm.x[i], swarm.f[i]);
        }
        pack.fill();
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::baselines
