#include "cgofs/classifiers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "cgofs/error.hpp"
#include "cgofs/rng.hpp"

namespace cgofs {

std::string_view to_string(ClassifierKind kind) noexcept {
    switch (kind) {
    case ClassifierKind::KNN: return "KNN";
    case ClassifierKind::SVM: return "SVM";
    case ClassifierKind::SGD: return "SGD";
    }
    return "?";
}

ClassifierKind parse_classifier(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (ClassifierKind k : kAllClassifiers) {
        if (to_string(k) == upper) {
            return k;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown classifier '" + std::string(name) + "'");
}

Label argmax(std::span<const double> scores) noexcept {
    Label best = 0;
    for (Label c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) {
            best = c;
        }
    }
    return best;
}

namespace {

LinearModel train_linear(const ClassifierSpec& spec, const Matrix& x, std::span<const Label> y,
                         std::size_t class_count) {
    if (!(spec.sgd_lr > 0.0) || spec.batch_size == 0) {
        throw Error(ErrorCode::InvalidArgument, "learning rate and batch size must be positive");
    }
    const std::size_t n = x.rows();
    const std::size_t dim = x.cols();
    const bool hinge = spec.kind == ClassifierKind::SVM || spec.sgd_loss == SgdLoss::Hinge;
    double reg = spec.sgd_alpha;
    if (spec.kind == ClassifierKind::SVM) {
        if (!(spec.svm_c > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "svm_c must be positive");
        }
        reg = 1.0 / (spec.svm_c * static_cast<double>(n));
    }

    LinearModel model{Matrix(class_count, dim), std::vector<double>(class_count, 0.0)};
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomSource rng(spec.seed);
    Matrix grad(class_count, dim);
    std::vector<double> grad_b(class_count);

    for (std::size_t epoch = 0; epoch < spec.sgd_epochs; ++epoch) {
        for (std::size_t i = n; i > 1; --i) {
            std::swap(order[i - 1], order[rng.index(i)]);
        }
        for (std::size_t start = 0; start < n; start += spec.batch_size) {
            const std::size_t stop = std::min(n, start + spec.batch_size);
            const double inv_batch = 1.0 / static_cast<double>(stop - start);
            grad = Matrix(class_count, dim);
            std::fill(grad_b.begin(), grad_b.end(), 0.0);
            for (std::size_t s = start; s < stop; ++s) {
                const auto row = x.row(order[s]);
                for (std::size_t c = 0; c < class_count; ++c) {
                    const double target = y[order[s]] == c ? 1.0 : -1.0;
                    const auto w = model.weights.row(c);
                    const double score =
                        std::inner_product(w.begin(), w.end(), row.begin(), model.bias[c]);
                    const double margin = target * score;
                    double dloss = 0.0; // d loss / d score
                    if (hinge) {
                        dloss = margin < 1.0 ? -target : 0.0;
                    } else {
                        dloss = -target / (1.0 + std::exp(margin));
                    }
                    if (dloss != 0.0) {
                        auto g = grad.row(c);
                        for (std::size_t j = 0; j < dim; ++j) {
                            g[j] += dloss * row[j];
                        }
                        grad_b[c] += dloss;
                    }
                }
            }
            for (std::size_t c = 0; c < class_count; ++c) {
                auto w = model.weights.row(c);
                const auto g = grad.row(c);
                for (std::size_t j = 0; j < dim; ++j) {
                    w[j] -= spec.sgd_lr * (reg * w[j] + g[j] * inv_batch);
                }
                model.bias[c] -= spec.sgd_lr * grad_b[c] * inv_batch;
            }
        }
    }
    for (double v : model.weights.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "linear model weights diverged");
        }
    }
    for (double v : model.bias) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "linear model bias diverged");
        }
    }
    return model;
}

Label knn_vote(const KnnModel& model, std::span<const double> query, std::vector<std::pair<double, std::size_t>>& dist,
               std::vector<std::size_t>& votes) {
    const Split& train = model.train;
    dist.resize(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto row = train.x.row(i);
        double d2 = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = row[j] - query[j];
            d2 += diff * diff;
        }
        dist[i] = {d2, i};
    }
    const std::size_t k = std::min(model.k, dist.size());
    // Equal distances resolve by training-row index.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        ++votes[train.y[dist[i].second]];
    }
    return static_cast<Label>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

} // namespace

Model train(const ClassifierSpec& spec, const Matrix& x, std::span<const Label> y, std::size_t class_count) {
    if (x.rows() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ in length");
    }
    std::vector<bool> present(class_count, false);
    std::size_t distinct = 0;
    for (Label label : y) {
        if (label >= class_count) {
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(label) + " >= class_count");
        }
        if (!present[label]) {
            present[label] = true;
            ++distinct;
        }
    }
    if (distinct < 2) {
        throw Error(ErrorCode::SingleClass, "training labels contain fewer than two classes");
    }
    for (double v : x.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "training features contain a non-finite value");
        }
    }

    if (spec.kind == ClassifierKind::KNN) {
        if (spec.knn_k < 1 || spec.knn_k > x.rows()) {
            throw Error(ErrorCode::InvalidArgument, "knn_k must lie in [1, n_train]");
        }
        return KnnModel{Split{x, std::vector<Label>(y.begin(), y.end())}, spec.knn_k, class_count};
    }
    return train_linear(spec, x, y, class_count);
}

std::vector<Label> predict(const Model& model, const Matrix& x) {
    std::vector<Label> out(x.rows());
    if (const auto* knn = std::get_if<KnnModel>(&model)) {
        if (x.rows() > 0 && x.cols() != knn->train.x.cols()) {
            throw Error(ErrorCode::DimMismatch, "query dimension differs from training dimension");
        }
        std::vector<std::pair<double, std::size_t>> dist;
        std::vector<std::size_t> votes(knn->class_count);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            out[i] = knn_vote(*knn, x.row(i), dist, votes);
        }
        return out;
    }
    const auto& lin = std::get<LinearModel>(model);
    if (x.rows() > 0 && x.cols() != lin.weights.cols()) {
        throw Error(ErrorCode::DimMismatch, "query dimension differs from training dimension");
    }
    std::vector<double> scores(lin.bias.size());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto row = x.row(i);
        for (std::size_t c = 0; c < scores.size(); ++c) {
            const auto w = lin.weights.row(c);
            scores[c] = std::inner_product(w.begin(), w.end(), row.begin(), lin.bias[c]);
        }
        out[i] = argmax(scores);
    }
    return out;
}

} // namespace cgofs
