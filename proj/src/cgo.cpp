#include "cgofs/cgo.hpp"

#include <algorithm>
#include <numeric>

#include "cgofs/error.hpp"

namespace cgofs::cgo {

void CgoConfig::validate() const {
    OptimizerConfig::validate();
    if (beta_gamma_range.lo > beta_gamma_range.hi) {
        throw Error(ErrorCode::InvalidArgument, "beta/gamma range must satisfy lo <= hi");
    }
}

std::vector<Agent> init_population(const CgoConfig& config, RandomSource& rng) {
    config.validate();
    std::vector<Agent> population(config.population);
    for (Agent& agent : population) {
        agent.position = random_position(config.bounds, rng);
    }
    return population;
}

std::vector<std::size_t> mean_group_indices(std::size_t population_size, RandomSource& rng) {
    const std::size_t size = static_cast<std::size_t>(rng.uniform_int(1, population_size));
    // Partial Fisher-Yates over 0..n-1.
    std::vector<std::size_t> pool(population_size);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + rng.index(population_size - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<double> mean_of(std::span<const Agent> population, std::span<const std::size_t> indices) {
    if (indices.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mean group must not be empty");
    }
    std::vector<double> mean(population[indices.front()].position.size(), 0.0);
    for (std::size_t idx : indices) {
        const auto& p = population[idx].position;
        for (std::size_t j = 0; j < mean.size(); ++j) {
            mean[j] += p[j];
        }
    }
    for (double& v : mean) {
        v /= static_cast<double>(indices.size());
    }
    return mean;
}

std::vector<double> mean_group(std::span<const Agent> population, std::size_t /*k_index*/, RandomSource& rng) {
    if (population.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mean group of an empty population");
    }
    const auto indices = mean_group_indices(population.size(), rng);
    return mean_of(population, indices);
}

double alpha_formula(int branch, double r, double epsilon) noexcept {
    switch (branch) {
    case 0: return r;
    case 1: return 2.0 * r;
    case 2: return epsilon * r + 1.0;
    default: return epsilon * r + epsilon;
    }
}

AlphaDraw sample_alpha_draw(RandomSource& rng) {
    const int branch = static_cast<int>(rng.uniform_int(0, 3));
    const double r = rng.uniform();
    const double epsilon = rng.uniform();
    return {branch, alpha_formula(branch, r, epsilon)};
}

std::vector<double> triangle_seed(std::span<const double> base, std::span<const double> toward,
                                  std::span<const double> away, double alpha, double beta, double gamma) {
    if (toward.size() != base.size() || away.size() != base.size()) {
        throw Error(ErrorCode::DimMismatch, "triangle vertices differ in dimension");
    }
    std::vector<double> out(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) {
        out[j] = base[j] + alpha * (beta * toward[j] - gamma * away[j]);
    }
    return out;
}

std::array<std::vector<double>, 4> generate_seeds(std::span<const double> seed, std::span<const double> global_best,
                                                  std::span<const double> mean_group, RandomSource& rng,
                                                  const CgoConfig& config) {
    const auto draw_factor = [&] {
        return static_cast<double>(rng.uniform_int(config.beta_gamma_range.lo, config.beta_gamma_range.hi));
    };
    const auto next = [&](std::span<const double> base, std::span<const double> toward,
                          std::span<const double> away) {
        const double alpha = sample_alpha(rng);
        const double beta = draw_factor();
        const double gamma = draw_factor();
        return triangle_seed(base, toward, away, alpha, beta, gamma);
    };

    std::array<std::vector<double>, 4> seeds;
    seeds[0] = next(seed, global_best, mean_group);
    seeds[1] = next(global_best, seed, mean_group);
    seeds[2] = next(mean_group, seed, global_best);

    seeds[3].assign(seed.begin(), seed.end());
    const auto coords = mean_group_indices(seed.size(), rng);
    for (std::size_t j : coords) {
        seeds[3][j] += rng.uniform();
    }

    for (auto& s : seeds) {
        config.bounds.clamp(s);
    }
    return seeds;
}

RunResult optimize(const Objective& objective, const CgoConfig& config, RandomSource& rng) {
    config.validate();
    EvaluationTracker tracker(objective, config, rng.seed(), "CGO");

    std::vector<Agent> population = init_population(config, rng);
    for (Agent& agent : population) {
        agent.fitness = tracker.evaluate(agent.position);
    }

    const std::size_t d = config.population;
    std::vector<Agent> pool;
    pool.reserve(5 * d);
    std::vector<std::size_t> order(5 * d);

    for (std::size_t iter = 0; iter < config.iterations; ++iter) {
        // G is frozen for the iteration; replacement happens once all seeds exist.
        const std::vector<double> global_best = tracker.best_position();

        pool.assign(population.begin(), population.end());
        for (std::size_t k = 0; k < d; ++k) {
            const auto group = mean_group(population, k, rng);
            auto seeds = generate_seeds(population[k].position, global_best, group, rng, config);
            for (auto& s : seeds) {
                pool.push_back(Agent{std::move(s), std::nullopt});
            }
        }
        for (std::size_t i = d; i < pool.size(); ++i) {
            pool[i].fitness = tracker.evaluate(pool[i].position);
        }

        order.resize(pool.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return *pool[a].fitness < *pool[b].fitness; });
        for (std::size_t i = 0; i < d; ++i) {
            population[i] = std::move(pool[order[i]]);
        }
        tracker.end_iteration();
    }
    return tracker.finish();
}

} // namespace cgofs::cgo
