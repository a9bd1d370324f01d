#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cgofs/cgo.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cgofs;
using namespace cgofs::cgo;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += (v - 0.5) * (v - 0.5);
    }
    return s;
}

CgoConfig make_config(std::size_t dim, std::size_t population, std::size_t iterations) {
    CgoConfig config;
    config.population = population;
    config.iterations = iterations;
    config.bounds = SearchBounds(dim);
    return config;
}

/// Wraps an objective and keeps every position and value it was asked for.
struct Recorder {
    Objective inner;
    std::vector<std::vector<double>> positions;
    std::vector<double> values;

    Objective objective() {
        return [this](std::span<const double> p) {
            const double v = inner(p);
            positions.emplace_back(p.begin(), p.end());
            values.push_back(v);
            return v;
        };
    }
};

} // namespace

TEST_CASE("init_population draws every coordinate in [L, U)") {
    auto config = make_config(5, 3, 1);
    RandomSource rng(1);
    const auto pop = init_population(config, rng);
    REQUIRE(pop.size() == 3);
    for (const auto& agent : pop) {
        CHECK(agent.position.size() == 5);
        CHECK_FALSE(agent.fitness.has_value());
        for (double v : agent.position) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
    }
    config.bounds = SearchBounds(2, -4.0, -2.0);
    RandomSource rng2(1);
    for (const auto& agent : init_population(config, rng2)) {
        for (double v : agent.position) {
            CHECK(v >= -4.0);
            CHECK(v < -2.0);
        }
    }
}

TEST_CASE("init_population is reproducible") {
    const auto config = make_config(5, 10, 1);
    RandomSource a(7);
    RandomSource b(7);
    const auto pa = init_population(config, a);
    const auto pb = init_population(config, b);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].position == pb[i].position);
    }
}

TEST_CASE("mean group of identical agents is that agent") {
    const std::vector<Agent> pop(6, Agent{{0.1, 0.7, 0.3}, std::nullopt});
    RandomSource rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto m = mean_group(pop, 0, rng);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(m[j] == doctest::Approx(pop[0].position[j]).epsilon(1e-15));
        }
    }
}

TEST_CASE("two-point mean") {
    const std::vector<Agent> pop{{{0.0, 0.0}, std::nullopt}, {{1.0, 1.0}, std::nullopt}};
    const std::vector<std::size_t> both{0, 1};
    CHECK(mean_of(pop, both) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("mean group matches an independent mean over the logged indices") {
    RandomSource init(4);
    const auto pop = init_population(make_config(3, 4, 1), init);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomSource log_rng(seed);
        const auto indices = mean_group_indices(pop.size(), log_rng);
        REQUIRE_FALSE(indices.empty());
        std::vector<double> expected(3, 0.0);
        for (std::size_t i : indices) {
            for (std::size_t j = 0; j < 3; ++j) {
                expected[j] += pop[i].position[j];
            }
        }
        for (double& v : expected) {
            v /= static_cast<double>(indices.size());
        }
        RandomSource rng(seed);
        const auto got = mean_group(pop, 2, rng);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(got[j] == doctest::Approx(expected[j]).epsilon(1e-15));
        }
    }
}

TEST_CASE("mean group indices: distinct, sorted, size uniform in [1, n]") {
    RandomSource rng(9);
    std::vector<int> sizes(5, 0);
    for (int t = 0; t < 20000; ++t) {
        const auto idx = mean_group_indices(4, rng);
        REQUIRE(idx.size() >= 1);
        REQUIRE(idx.size() <= 4);
        CHECK(std::is_sorted(idx.begin(), idx.end()));
        CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
        ++sizes[idx.size()];
    }
    for (std::size_t s = 1; s <= 4; ++s) {
        CHECK(sizes[s] / 20000.0 == doctest::Approx(0.25).epsilon(0.1));
    }
}

TEST_CASE("alpha formulas") {
    CHECK(alpha_formula(0, 0.3, 0.9) == doctest::Approx(0.3));
    CHECK(alpha_formula(1, 0.5, 0.9) == doctest::Approx(1.0));
    CHECK(alpha_formula(2, 0.5, 0.4) == doctest::Approx(1.2));
    CHECK(alpha_formula(3, 0.5, 0.4) == doctest::Approx(0.6));
}

TEST_CASE("alpha branches are equally likely and values lie in [0, 2)") {
    RandomSource rng(10);
    std::vector<int> counts(4, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto draw = sample_alpha_draw(rng);
        REQUIRE(draw.branch >= 0);
        REQUIRE(draw.branch < 4);
        ++counts[static_cast<std::size_t>(draw.branch)];
        CHECK(draw.value >= 0.0);
        CHECK(draw.value < 2.0);
    }
    for (int c : counts) {
        CHECK(std::abs(c / 10000.0 - 0.25) <= 0.03);
    }
}

TEST_CASE("triangle seed by hand") {
    const std::vector<double> s{0.2, 0.2};
    const std::vector<double> g{0.8, 0.8};
    const std::vector<double> m{0.5, 0.5};
    const auto p1 = triangle_seed(s, g, m, 1.0, 1.0, 1.0);
    CHECK(p1[0] == doctest::Approx(0.5));
    CHECK(p1[1] == doctest::Approx(0.5));
    const auto p3 = triangle_seed(m, s, g, 0.5, 2.0, 1.0);
    CHECK(p3[0] == doctest::Approx(0.5 + 0.5 * (0.4 - 0.8)));
}

TEST_CASE("coincident vertices reproduce the point when beta equals gamma") {
    auto config = make_config(3, 2, 1);
    config.beta_gamma_range = {1, 1};
    const std::vector<double> p{0.25, 0.5, 0.75};
    RandomSource rng(2);
    for (int t = 0; t < 50; ++t) {
        const auto seeds = generate_seeds(p, p, p, rng, config);
        for (int i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(seeds[i][j] == doctest::Approx(p[j]).epsilon(1e-15));
            }
        }
        std::size_t moved = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(seeds[3][j] >= p[j]);
            moved += seeds[3][j] != p[j] ? 1 : 0;
        }
        CHECK(moved >= 1);
    }
}

TEST_CASE("property: generated seeds always lie in the box") {
    RandomSource rng(12);
    for (int t = 0; t < 300; ++t) {
        const std::size_t dim = 1 + rng.index(10);
        const double lo = rng.uniform(-5.0, 0.0);
        const double hi = lo + rng.uniform(0.1, 3.0);
        CgoConfig config = make_config(dim, 4, 1);
        config.bounds = SearchBounds(dim, lo, hi);
        config.beta_gamma_range = {1, 1 + rng.uniform_int(0, 3)};
        std::vector<double> s(dim), g(dim), m(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            s[j] = rng.uniform(lo, hi);
            g[j] = rng.uniform(lo, hi);
            m[j] = rng.uniform(lo, hi);
        }
        for (const auto& seed : generate_seeds(s, g, m, rng, config)) {
            CHECK(config.bounds.contains(seed));
        }
    }
}

TEST_CASE("sphere in five dimensions") {
    const auto config = make_config(5, 50, 200);
    RandomSource rng(1);
    const auto result = optimize(sphere, config, rng);
    CHECK(result.best_fitness <= 1e-3);
    CHECK(result.optimizer_name == "CGO");
}

TEST_CASE("size-only objective converges to a single feature") {
    const Objective popcount = [](std::span<const double> x) {
        const auto n = std::count_if(x.begin(), x.end(), [](double v) { return v > 0.5; });
        return n == 0 ? 2.0 : static_cast<double>(n) / 8.0;
    };
    RandomSource rng(5);
    const auto result = optimize(popcount, make_config(8, 50, 100), rng);
    CHECK(result.best_fitness == 0.125);
    CHECK(result.best_mask.selected_count() == 1);
}

TEST_CASE("one iteration reports the best of the initial population and first seeds") {
    Recorder rec{sphere, {}, {}};
    RandomSource rng(3);
    const auto result = optimize(rec.objective(), make_config(4, 10, 1), rng);
    REQUIRE(result.fitness_trace.size() == 1);
    CHECK(rec.values.size() == 10 + 40);
    CHECK(result.fitness_trace[0] == *std::min_element(rec.values.begin(), rec.values.end()));
}

TEST_CASE("property: elitism, bounds, budget and trace length over random problems") {
    RandomSource gen(99);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t dim = 1 + gen.index(12);
        const std::size_t pop = 2 + gen.index(15);
        const std::size_t iters = 1 + gen.index(15);
        std::vector<double> centre(dim);
        for (double& c : centre) {
            c = gen.uniform(-1.0, 2.0);
        }
        Recorder rec{[centre](std::span<const double> x) {
                         double s = 0.0;
                         for (std::size_t j = 0; j < x.size(); ++j) {
                             s += std::abs(x[j] - centre[j]);
                         }
                         return s;
                     },
                     {},
                     {}};
        CgoConfig config = make_config(dim, pop, iters);
        config.bounds = SearchBounds(dim, -0.5, 1.5);
        RandomSource rng(gen.next_u64());
        const auto result = optimize(rec.objective(), config, rng);

        CHECK(result.fitness_trace.size() == iters);
        CHECK(result.evaluations == pop + 4 * pop * iters);
        CHECK(rec.values.size() == result.evaluations);
        for (std::size_t t = 1; t < result.fitness_trace.size(); ++t) {
            CHECK(result.fitness_trace[t] <= result.fitness_trace[t - 1]);
        }
        for (const auto& p : rec.positions) {
            CHECK(config.bounds.contains(p));
        }
        CHECK(result.best_fitness == *std::min_element(rec.values.begin(), rec.values.end()));
        // Trace entry t is the minimum over everything evaluated up to the end of iteration t.
        for (std::size_t t = 0; t < iters; ++t) {
            const auto end = rec.values.begin() + static_cast<std::ptrdiff_t>(pop + 4 * pop * (t + 1));
            CHECK(result.fitness_trace[t] == *std::min_element(rec.values.begin(), end));
        }
    }
}

TEST_CASE("same seed gives an identical result") {
    const auto config = make_config(6, 12, 20);
    RandomSource a(8);
    RandomSource b(8);
    const auto ra = optimize(sphere, config, a);
    const auto rb = optimize(sphere, config, b);
    CHECK(ra.best_mask == rb.best_mask);
    CHECK(ra.fitness_trace == rb.fitness_trace);
    CHECK(ra.best_position == rb.best_position);
    CHECK(ra.rng_seed == 8);
}

TEST_CASE("errors") {
    RandomSource rng(1);
    const Objective nan = [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_ERROR_CODE(optimize(nan, make_config(2, 4, 2), rng), ErrorCode::ObjectiveNonFinite);
    CHECK_ERROR_CODE(optimize(sphere, make_config(2, 1, 2), rng), ErrorCode::InvalidArgument);
    CHECK_ERROR_CODE(optimize(sphere, make_config(2, 4, 0), rng), ErrorCode::InvalidArgument);
    auto config = make_config(2, 4, 2);
    config.beta_gamma_range = {2, 1};
    CHECK_ERROR_CODE(optimize(sphere, config, rng), ErrorCode::InvalidArgument);
}
