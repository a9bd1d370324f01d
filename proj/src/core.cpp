#include "cgofs/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cgofs/error.hpp"

namespace cgofs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ObjectiveNonFinite: return "ObjectiveNonFinite";
    case ErrorCode::UnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InsufficientBlocks: return "InsufficientBlocks";
    }
    return "Unknown";
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimMismatch, "matrix data size does not match rows*cols");
    }
}

void Matrix::push_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = values.size();
    }
    if (values.size() != cols_) {
        throw Error(ErrorCode::DimMismatch,
                    "row has " + std::to_string(values.size()) + " values, expected " + std::to_string(cols_));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const {
    Matrix out(row_ids.size(), col_ids.size());
    for (std::size_t r = 0; r < row_ids.size(); ++r) {
        const auto src = row(row_ids[r]);
        auto dst = out.row(r);
        for (std::size_t c = 0; c < col_ids.size(); ++c) {
            dst[c] = src[col_ids[c]];
        }
    }
    return out;
}

// ------------------------------------------------------------ BinaryMask

BinaryMask::BinaryMask(std::vector<bool> bits)
    : bits_(std::move(bits)), selected_(static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true))) {}

BinaryMask BinaryMask::from_string(std::string_view text) {
    std::vector<bool> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw Error(ErrorCode::ParseError, "mask string may only contain '0' and '1'");
        }
        bits.push_back(ch == '1');
    }
    return BinaryMask(std::move(bits));
}

std::vector<std::size_t> BinaryMask::selected_indices() const {
    std::vector<std::size_t> out;
    out.reserve(selected_);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::string BinaryMask::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) {
            s[i] = '1';
        }
    }
    return s;
}

// -------------------------------------------------------- FeatureDataset

namespace {

void validate_split(const Split& split, std::size_t dim, std::size_t class_count, std::string_view name) {
    if (split.x.rows() != split.y.size()) {
        throw Error(ErrorCode::LengthMismatch, std::string(name) + " split has " + std::to_string(split.x.rows()) +
                                                   " rows but " + std::to_string(split.y.size()) + " labels");
    }
    if (split.size() > 0 && split.x.cols() != dim) {
        throw Error(ErrorCode::DimMismatch, std::string(name) + " split dimension differs from train");
    }
    for (Label label : split.y) {
        if (label >= class_count) {
            throw Error(ErrorCode::LabelOutOfRange,
                        std::string(name) + " label " + std::to_string(label) + " outside [0, class_count)");
        }
    }
    for (double v : split.x.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, std::string(name) + " split contains a non-finite feature value");
        }
    }
}

} // namespace

FeatureDataset::FeatureDataset(Split train, Split test, std::size_t class_count, std::vector<std::string> class_names,
                               std::vector<std::string> feature_names)
    : train_(std::move(train)),
      test_(std::move(test)),
      dim_(train_.x.cols()),
      class_count_(class_count),
      class_names_(std::move(class_names)),
      feature_names_(std::move(feature_names)) {
    if (dim_ == 0) {
        throw Error(ErrorCode::InvalidArgument, "dataset needs at least one feature");
    }
    if (class_count_ == 0) {
        throw Error(ErrorCode::InvalidArgument, "class_count must be positive");
    }
    if (train_.size() < class_count_) {
        throw Error(ErrorCode::InvalidArgument, "fewer training rows than classes");
    }
    validate_split(train_, dim_, class_count_, "train");
    validate_split(test_, dim_, class_count_, "test");
    if (class_names_.empty()) {
        for (std::size_t c = 0; c < class_count_; ++c) {
            class_names_.push_back(std::to_string(c));
        }
    } else if (class_names_.size() != class_count_) {
        throw Error(ErrorCode::LengthMismatch, "class_names size differs from class_count");
    }
    if (feature_names_.empty()) {
        for (std::size_t j = 0; j < dim_; ++j) {
            feature_names_.push_back("f" + std::to_string(j));
        }
    } else if (feature_names_.size() != dim_) {
        throw Error(ErrorCode::LengthMismatch, "feature_names size differs from dim");
    }
}

FeatureDataset::FeatureDataset(const FeatureDataset& other)
    : train_(other.train_),
      test_(other.test_),
      dim_(other.dim_),
      class_count_(other.class_count_),
      class_names_(other.class_names_),
      feature_names_(other.feature_names_) {}

FeatureDataset& FeatureDataset::operator=(const FeatureDataset& other) {
    if (this != &other) {
        train_ = other.train_;
        test_ = other.test_;
        dim_ = other.dim_;
        class_count_ = other.class_count_;
        class_names_ = other.class_names_;
        feature_names_ = other.feature_names_;
        test_reads_.store(0);
    }
    return *this;
}

FeatureDataset::FeatureDataset(FeatureDataset&& other) noexcept
    : train_(std::move(other.train_)),
      test_(std::move(other.test_)),
      dim_(other.dim_),
      class_count_(other.class_count_),
      class_names_(std::move(other.class_names_)),
      feature_names_(std::move(other.feature_names_)) {}

FeatureDataset& FeatureDataset::operator=(FeatureDataset&& other) noexcept {
    train_ = std::move(other.train_);
    test_ = std::move(other.test_);
    dim_ = other.dim_;
    class_count_ = other.class_count_;
    class_names_ = std::move(other.class_names_);
    feature_names_ = std::move(other.feature_names_);
    test_reads_.store(0);
    return *this;
}

const Split& FeatureDataset::test() const noexcept {
    test_reads_.fetch_add(1, std::memory_order_relaxed);
    return test_;
}

Split apply_mask(const Split& split, const BinaryMask& mask) {
    if (split.size() > 0 && split.x.cols() != mask.dim()) {
        throw Error(ErrorCode::DimMismatch, "mask length " + std::to_string(mask.dim()) + " differs from dataset dim " +
                                                std::to_string(split.x.cols()));
    }
    if (mask.selected_count() == 0) {
        throw Error(ErrorCode::EmptyMask, "mask selects no features");
    }
    std::vector<std::size_t> rows(split.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    const auto cols = mask.selected_indices();
    Split out{split.x.select(rows, cols), split.y};
    if (split.size() == 0) {
        out.x = Matrix(0, cols.size());
    }
    return out;
}

FeatureDataset apply_mask(const FeatureDataset& dataset, const BinaryMask& mask) {
    if (mask.dim() != dataset.dim()) {
        throw Error(ErrorCode::DimMismatch, "mask length " + std::to_string(mask.dim()) + " differs from dataset dim " +
                                                std::to_string(dataset.dim()));
    }
    std::vector<std::string> names;
    for (std::size_t j : mask.selected_indices()) {
        names.push_back(dataset.feature_names()[j]);
    }
    return FeatureDataset(apply_mask(dataset.train(), mask), apply_mask(dataset.test(), mask), dataset.class_count(),
                          dataset.class_names(), std::move(names));
}

FeatureDataset min_max_scale(const FeatureDataset& dataset) {
    const Split& train = dataset.train();
    const std::size_t dim = dataset.dim();
    std::vector<double> lo(dim, 0.0);
    std::vector<double> hi(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        lo[j] = hi[j] = train.x(0, j);
    }
    for (std::size_t i = 1; i < train.size(); ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            lo[j] = std::min(lo[j], train.x(i, j));
            hi[j] = std::max(hi[j], train.x(i, j));
        }
    }
    auto scale = [&](Split split) {
        for (std::size_t i = 0; i < split.size(); ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double width = hi[j] - lo[j];
                split.x(i, j) = width > 0.0 ? (split.x(i, j) - lo[j]) / width : 0.0;
            }
        }
        return split;
    };
    return FeatureDataset(scale(train), scale(dataset.test()), dataset.class_count(), dataset.class_names(),
                          dataset.feature_names());
}

// ---------------------------------------------------------- SearchBounds

SearchBounds::SearchBounds(std::size_t dim, double lower, double upper) : dim_(dim), lower_(lower), upper_(upper) {
    if (dim == 0) {
        throw Error(ErrorCode::InvalidArgument, "search dimension must be positive");
    }
    if (!(std::isfinite(lower) && std::isfinite(upper)) || !(lower < upper)) {
        throw Error(ErrorCode::InvalidArgument, "search bounds require finite L < U");
    }
}

void SearchBounds::clamp(std::span<double> position) const noexcept {
    for (double& v : position) {
        v = std::clamp(v, lower_, upper_);
    }
}

bool SearchBounds::contains(std::span<const double> position) const noexcept {
    return std::all_of(position.begin(), position.end(), [&](double v) { return v >= lower_ && v <= upper_; });
}

} // namespace cgofs
