#pragma once

/// Wrapper feature-selection objective.
///
///   fitness = lambda * error + (1 - lambda) * |mask| / dim
///
/// where the mask is the position thresholded coordinate-wise and `error`
/// is the inner classifier's error rate on held-out TRAIN rows, computed
/// with the selected columns only. An empty mask scores `empty_mask_penalty`,
/// which for lambda > 0 is above every legal value (legal values lie in
/// [0, 1]).

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cgofs/classifiers.hpp"
#include "cgofs/core.hpp"
#include "cgofs/optimizer.hpp"
#include "cgofs/rng.hpp"

namespace cgofs {

/// bit j = position[j] > threshold (strict).
[[nodiscard]] BinaryMask binarize(std::span<const double> position, double threshold = 0.5);

enum class InnerEvalKind { Holdout, KFold };

struct InnerEval {
    InnerEvalKind kind = InnerEvalKind::Holdout;
    double holdout_fraction = 0.2;
    std::size_t folds = 5;
};

/// Row indices of one inner train/eval partition of the training split.
struct InnerSplit {
    std::vector<std::size_t> fit;
    std::vector<std::size_t> eval;
};

/// Stratified partitions of `labels`. Holdout yields one partition with
/// round(fraction * n_c) eval rows per class (at least one when n_c >= 2);
/// k-fold yields k partitions whose eval sets tile the rows.
[[nodiscard]] std::vector<InnerSplit> make_inner_splits(std::span<const Label> labels, std::size_t class_count,
                                                        const InnerEval& eval, RandomSource& rng);

struct FitnessConfig {
    double lambda = 0.99;
    double threshold = 0.5;
    ClassifierSpec inner_classifier{};
    InnerEval inner_eval{};
    /// Defaults to 1 + lambda.
    std::optional<double> empty_mask_penalty;

    [[nodiscard]] double penalty() const noexcept { return empty_mask_penalty.value_or(1.0 + lambda); }
    /// Throws InvalidArgument unless 0 <= lambda <= 1 and 0 < threshold < 1.
    void validate() const;
};

/// lambda * error + (1 - lambda) * selected / dim.
[[nodiscard]] double combine_fitness(double lambda, double error_rate, std::size_t selected, std::size_t dim) noexcept;

/// The per-run objective. Splits are drawn once at construction so the value
/// is a pure function of the mask; results are memoised by mask bits.
/// `evaluate` may be called concurrently.
class FeatureSelectionObjective {
public:
    FeatureSelectionObjective(Split train, std::size_t class_count, FitnessConfig config, RandomSource& split_rng);

    [[nodiscard]] double evaluate(std::span<const double> position) const;
    [[nodiscard]] double evaluate_mask(const BinaryMask& mask) const;
    /// Inner error rate for a non-empty mask (uncached).
    [[nodiscard]] double error_rate(const BinaryMask& mask) const;

    [[nodiscard]] Objective as_objective() const {
        return [this](std::span<const double> p) { return evaluate(p); };
    }

    [[nodiscard]] const std::vector<InnerSplit>& splits() const noexcept { return splits_; }
    [[nodiscard]] const FitnessConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t dim() const noexcept { return train_.x.cols(); }
    [[nodiscard]] std::size_t cache_size() const;
    [[nodiscard]] std::size_t classifier_fits() const;

private:
    Split train_;
    std::size_t class_count_;
    FitnessConfig config_;
    std::vector<InnerSplit> splits_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::vector<bool>, double> cache_;
    mutable std::size_t fits_ = 0;
};

/// One-shot evaluation: draws the inner splits from `rng`, then scores the
/// position. Equivalent to a fresh FeatureSelectionObjective.
[[nodiscard]] double evaluate(std::span<const double> position, const FeatureDataset& dataset,
                              const FitnessConfig& config, RandomSource& rng);

} // namespace cgofs
