#include "cgofs/metrics.hpp"

#include <numeric>
#include <string>

#include "cgofs/error.hpp"

namespace cgofs {

ConfusionMatrix::ConfusionMatrix(std::size_t class_count, std::vector<std::size_t> row_major_counts)
    : n_(class_count), counts_(std::move(row_major_counts)) {
    if (counts_.size() != n_ * n_) {
        throw Error(ErrorCode::LengthMismatch, "confusion counts must have class_count^2 entries");
    }
}

std::size_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::trace() const noexcept {
    std::size_t t = 0;
    for (std::size_t c = 0; c < n_; ++c) {
        t += (*this)(c, c);
    }
    return t;
}

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred, std::size_t class_count) {
    if (y_true.size() != y_pred.size()) {
        throw Error(ErrorCode::LengthMismatch, "y_true has " + std::to_string(y_true.size()) + " labels, y_pred " +
                                                   std::to_string(y_pred.size()));
    }
    if (y_true.empty()) {
        throw Error(ErrorCode::LengthMismatch, "no samples to score");
    }
    ConfusionMatrix cm(class_count);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] >= class_count || y_pred[i] >= class_count) {
            throw Error(ErrorCode::LabelOutOfRange, "label outside [0, " + std::to_string(class_count) + ")");
        }
        cm.add(y_true[i], y_pred[i]);
    }
    return cm;
}

MetricsReport compute_report(const ConfusionMatrix& cm) {
    const std::size_t n = cm.class_count();
    const std::size_t total = cm.total();
    if (total == 0) {
        throw Error(ErrorCode::InvalidArgument, "confusion matrix is empty");
    }

    MetricsReport report;
    report.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
    report.per_class.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        ClassMetrics& m = report.per_class[c];
        std::size_t row = 0;
        std::size_t col = 0;
        for (std::size_t k = 0; k < n; ++k) {
            row += cm(c, k);
            col += cm(k, c);
        }
        m.tp = cm(c, c);
        m.fn = row - m.tp;
        m.fp = col - m.tp;
        m.tn = total - m.tp - m.fn - m.fp;
        m.precision = safe_ratio(double(m.tp), double(m.tp + m.fp));
        m.recall = safe_ratio(double(m.tp), double(m.tp + m.fn));
        m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
        m.specificity = safe_ratio(double(m.tn), double(m.tn + m.fp));
        m.balanced_accuracy = (m.recall + m.specificity) / 2.0;
    }

    if (n == 2) {
        const ClassMetrics& pos = report.per_class[1];
        report.averaging = Averaging::Binary;
        report.precision = pos.precision;
        report.recall = pos.recall;
        report.f1 = pos.f1;
        report.specificity = pos.specificity;
        report.balanced_accuracy = pos.balanced_accuracy;
    } else {
        report.averaging = Averaging::Macro;
        for (const ClassMetrics& m : report.per_class) {
            report.precision += m.precision;
            report.recall += m.recall;
            report.f1 += m.f1;
            report.specificity += m.specificity;
            report.balanced_accuracy += m.balanced_accuracy;
        }
        const double k = static_cast<double>(n);
        report.precision /= k;
        report.recall /= k;
        report.f1 /= k;
        report.specificity /= k;
        report.balanced_accuracy /= k;
    }
    report.sensitivity = report.recall;
    return report;
}

} // namespace cgofs
