#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "cgofs/core.hpp"

namespace cgofs {

enum class ClassifierKind { KNN, SVM, SGD };
enum class SgdLoss { Log, Hinge };

inline constexpr ClassifierKind kAllClassifiers[] = {ClassifierKind::SGD, ClassifierKind::KNN, ClassifierKind::SVM};

[[nodiscard]] std::string_view to_string(ClassifierKind kind) noexcept;
/// Case-insensitive; throws InvalidArgument.
[[nodiscard]] ClassifierKind parse_classifier(std::string_view name);

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::SVM;
    std::size_t knn_k = 5;
    double svm_c = 1.0;
    SgdLoss sgd_loss = SgdLoss::Log;
    double sgd_lr = 0.01;
    std::size_t sgd_epochs = 50;
    std::size_t batch_size = 8;
    /// L2 strength of the SGD model (the SVM uses 1/(C n) instead).
    double sgd_alpha = 1e-4;
    std::uint64_t seed = 0;
};

/// Stored training set, Euclidean distance, majority vote.
struct KnnModel {
    Split train;
    std::size_t k = 5;
    std::size_t class_count = 0;
};

/// One-vs-rest linear scores w_c . x + b_c.
struct LinearModel {
    Matrix weights; // class_count x dim
    std::vector<double> bias;
};

using Model = std::variant<KnnModel, LinearModel>;

/// Fits a classifier on (x, y) with labels in [0, class_count).
///
/// KNN keeps the data. SVM and SGD learn one-vs-rest weight vectors by
/// mini-batch gradient descent: hinge loss with L2 strength 1/(C n) for SVM,
/// the configured loss with `sgd_alpha` for SGD. Shuffling uses spec.seed, so
/// training is deterministic.
///
/// Throws SingleClass if fewer than two classes occur in y, NonFinite if a
/// weight diverges, InvalidArgument for bad hyper-parameters.
[[nodiscard]] Model train(const ClassifierSpec& spec, const Matrix& x, std::span<const Label> y,
                          std::size_t class_count);

/// One label per row. KNN vote ties and linear score ties go to the smallest
/// class id. Throws DimMismatch.
[[nodiscard]] std::vector<Label> predict(const Model& model, const Matrix& x);

/// Index of the largest value, first one on ties.
[[nodiscard]] Label argmax(std::span<const double> scores) noexcept;

} // namespace cgofs
