#include "cgofs/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cgofs/error.hpp"

namespace cgofs {

BinaryMask binarize(std::span<const double> position, double threshold) {
    std::vector<bool> bits(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) {
        bits[j] = position[j] > threshold;
    }
    return BinaryMask(std::move(bits));
}

void FitnessConfig::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");
    }
    if (inner_eval.kind == InnerEvalKind::Holdout &&
        !(inner_eval.holdout_fraction > 0.0 && inner_eval.holdout_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "holdout fraction must lie in (0, 1)");
    }
    if (inner_eval.kind == InnerEvalKind::KFold && inner_eval.folds < 2) {
        throw Error(ErrorCode::InvalidArgument, "k-fold evaluation needs at least 2 folds");
    }
    if (!(penalty() >= 1.0) || !std::isfinite(penalty())) {
        throw Error(ErrorCode::InvalidArgument, "empty-mask penalty must be finite and at least 1");
    }
}

double combine_fitness(double lambda, double error_rate, std::size_t selected, std::size_t dim) noexcept {
    return lambda * error_rate + (1.0 - lambda) * (static_cast<double>(selected) / static_cast<double>(dim));
}

std::vector<InnerSplit> make_inner_splits(std::span<const Label> labels, std::size_t class_count,
                                          const InnerEval& eval, RandomSource& rng) {
    std::vector<std::vector<std::size_t>> by_class(class_count);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class.at(labels[i]).push_back(i);
    }
    for (auto& rows : by_class) {
        for (std::size_t i = rows.size(); i > 1; --i) {
            std::swap(rows[i - 1], rows[rng.index(i)]);
        }
    }

    std::vector<InnerSplit> splits;
    if (eval.kind == InnerEvalKind::Holdout) {
        InnerSplit split;
        for (const auto& rows : by_class) {
            auto n_eval = static_cast<std::size_t>(std::lround(eval.holdout_fraction * static_cast<double>(rows.size())));
            if (rows.size() >= 2) {
                n_eval = std::clamp<std::size_t>(n_eval, 1, rows.size() - 1);
            } else {
                n_eval = 0;
            }
            split.eval.insert(split.eval.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_eval));
            split.fit.insert(split.fit.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_eval), rows.end());
        }
        std::sort(split.fit.begin(), split.fit.end());
        std::sort(split.eval.begin(), split.eval.end());
        splits.push_back(std::move(split));
        return splits;
    }

    // Deal each class's shuffled rows round-robin so every fold is stratified.
    std::vector<std::size_t> fold_of(labels.size());
    for (const auto& rows : by_class) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            fold_of[rows[r]] = r % eval.folds;
        }
    }
    for (std::size_t k = 0; k < eval.folds; ++k) {
        InnerSplit split;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            (fold_of[i] == k ? split.eval : split.fit).push_back(i);
        }
        if (!split.eval.empty()) {
            splits.push_back(std::move(split));
        }
    }
    return splits;
}

FeatureSelectionObjective::FeatureSelectionObjective(Split train, std::size_t class_count, FitnessConfig config,
                                                     RandomSource& split_rng)
    : train_(std::move(train)), class_count_(class_count), config_(std::move(config)) {
    config_.validate();
    if (train_.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, "fitness needs a non-empty training split");
    }
    splits_ = make_inner_splits(train_.y, class_count_, config_.inner_eval, split_rng);
}

double FeatureSelectionObjective::error_rate(const BinaryMask& mask) const {
    const auto cols = mask.selected_indices();
    std::size_t wrong = 0;
    std::size_t total = 0;
    for (const InnerSplit& split : splits_) {
        const Matrix fit_x = train_.x.select(split.fit, cols);
        std::vector<Label> fit_y;
        fit_y.reserve(split.fit.size());
        for (std::size_t i : split.fit) {
            fit_y.push_back(train_.y[i]);
        }
        Model model;
        try {
            model = train(config_.inner_classifier, fit_x, fit_y, class_count_);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NonFinite) {
                throw Error(ErrorCode::ObjectiveNonFinite, e.what());
            }
            throw;
        }
        const auto predicted = predict(model, train_.x.select(split.eval, cols));
        for (std::size_t r = 0; r < split.eval.size(); ++r) {
            wrong += predicted[r] != train_.y[split.eval[r]] ? 1 : 0;
        }
        total += split.eval.size();
    }
    {
        std::lock_guard lock(mutex_);
        fits_ += splits_.size();
    }
    return total > 0 ? static_cast<double>(wrong) / static_cast<double>(total) : 0.0;
}

double FeatureSelectionObjective::evaluate_mask(const BinaryMask& mask) const {
    if (mask.dim() != dim()) {
        throw Error(ErrorCode::DimMismatch, "position dimension differs from dataset dimension");
    }
    if (mask.selected_count() == 0) {
        return config_.penalty();
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(mask.bits()); it != cache_.end()) {
            return it->second;
        }
    }
    // Computed outside the lock; concurrent duplicates produce the same value.
    const double error = error_rate(mask);
    const double value = combine_fitness(config_.lambda, error, mask.selected_count(), mask.dim());
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::ObjectiveNonFinite, "fitness is not finite");
    }
    std::lock_guard lock(mutex_);
    cache_[mask.bits()] = value;
    return value;
}

double FeatureSelectionObjective::evaluate(std::span<const double> position) const {
    for (double v : position) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::ObjectiveNonFinite, "position has a non-finite coordinate");
        }
    }
    return evaluate_mask(binarize(position, config_.threshold));
}

std::size_t FeatureSelectionObjective::cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

std::size_t FeatureSelectionObjective::classifier_fits() const {
    std::lock_guard lock(mutex_);
    return fits_;
}

double evaluate(std::span<const double> position, const FeatureDataset& dataset, const FitnessConfig& config,
                RandomSource& rng) {
    if (position.size() != dataset.dim()) {
        throw Error(ErrorCode::DimMismatch, "position dimension differs from dataset dimension");
    }
    const FeatureSelectionObjective objective(dataset.train(), dataset.class_count(), config, rng);
    return objective.evaluate(position);
}

} // namespace cgofs
