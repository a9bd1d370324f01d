#include "cgofs/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "cgofs/error.hpp"
#include "cgofs/fitness.hpp"

namespace cgofs {

void OptimizerConfig::validate() const {
    if (population < 2) {
        throw Error(ErrorCode::InvalidArgument, "population must be at least 2");
    }
    if (iterations < 1) {
        throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    }
}

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
    case Algorithm::CGO: return "CGO";
    case Algorithm::PSO: return "PSO";
    case Algorithm::MVO: return "MVO";
    case Algorithm::GWO: return "GWO";
    case Algorithm::MFO: return "MFO";
    case Algorithm::WOA: return "WOA";
    case Algorithm::FFA: return "FFA";
    case Algorithm::BAT: return "BAT";
    case Algorithm::HGS: return "HGS";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == upper) {
            return a;
        }
    }
    throw Error(ErrorCode::UnknownAlgorithm, "unknown optimizer '" + std::string(name) + "'");
}

EvaluationTracker::EvaluationTracker(const Objective& objective, const OptimizerConfig& config, std::uint64_t seed,
                                     std::string optimizer_name)
    : objective_(objective),
      config_(config),
      seed_(seed),
      name_(std::move(optimizer_name)),
      start_(std::chrono::steady_clock::now()),
      best_fitness_(std::numeric_limits<double>::infinity()) {
    config_.validate();
    trace_.reserve(config_.iterations);
}

double EvaluationTracker::evaluate(std::span<const double> position) {
    const double f = objective_(position);
    ++evaluations_;
    if (!std::isfinite(f)) {
        throw Error(ErrorCode::ObjectiveNonFinite, "objective returned a non-finite value in " + name_);
    }
    if (f < best_fitness_) {
        best_fitness_ = f;
        best_position_.assign(position.begin(), position.end());
    }
    return f;
}

void EvaluationTracker::end_iteration() { trace_.push_back(best_fitness_); }

RunResult EvaluationTracker::finish() const {
    RunResult result;
    result.best_position = best_position_;
    result.best_mask = binarize(best_position_, config_.mask_threshold);
    result.best_fitness = best_fitness_;
    result.fitness_trace = trace_;
    result.evaluations = evaluations_;
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    result.rng_seed = seed_;
    result.optimizer_name = name_;
    return result;
}

std::vector<double> random_position(const SearchBounds& bounds, RandomSource& rng) {
    std::vector<double> x(bounds.dim());
    for (double& v : x) {
        v = rng.uniform() * bounds.width() + bounds.lower();
    }
    return x;
}

} // namespace cgofs
