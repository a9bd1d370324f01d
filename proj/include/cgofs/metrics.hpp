#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cgofs/core.hpp"

namespace cgofs {

/// counts(i, j) = number of samples with true class i predicted as j.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::size_t class_count)
        : n_(class_count), counts_(class_count * class_count, 0) {}
    ConfusionMatrix(std::size_t class_count, std::vector<std::size_t> row_major_counts);

    [[nodiscard]] std::size_t class_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t operator()(std::size_t truth, std::size_t predicted) const noexcept {
        return counts_[truth * n_ + predicted];
    }
    void add(std::size_t truth, std::size_t predicted) { ++counts_.at(truth * n_ + predicted); }

    [[nodiscard]] std::size_t total() const noexcept;
    [[nodiscard]] std::size_t trace() const noexcept;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t n_;
    std::vector<std::size_t> counts_;
};

/// Throws LengthMismatch for unequal or empty inputs, LabelOutOfRange for ids >= class_count.
[[nodiscard]] ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred,
                                        std::size_t class_count);

/// One-vs-rest scores of a single class.
struct ClassMetrics {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    double precision = 0.0;
    double recall = 0.0; // == sensitivity
    double f1 = 0.0;
    double specificity = 0.0;
    double balanced_accuracy = 0.0;
};

enum class Averaging {
    /// Class 1 is the positive class (two-class problems).
    Binary,
    /// Unweighted mean over classes.
    Macro,
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double balanced_accuracy = 0.0;
    Averaging averaging = Averaging::Macro;
    std::vector<ClassMetrics> per_class;
    double wall_time = 0.0;
};

/// Ratio with the 0/0 -> 0 convention.
[[nodiscard]] inline double safe_ratio(double num, double den) noexcept { return den > 0.0 ? num / den : 0.0; }

/// Per-class scores from one-vs-rest counts:
///   recall = sensitivity = TP/(TP+FN), precision = TP/(TP+FP),
///   F1 = 2PR/(P+R), specificity = TN/(TN+FP), balanced = (sens+spec)/2.
/// Accuracy is trace/total. Two-class matrices report the positive class
/// (id 1); larger ones report unweighted macro means.
[[nodiscard]] MetricsReport compute_report(const ConfusionMatrix& cm);

} // namespace cgofs
