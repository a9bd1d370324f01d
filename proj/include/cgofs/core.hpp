#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cgofs {

using Label = std::size_t;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Appends one row; the first appended row fixes the column count of an empty matrix.
    void push_row(std::span<const double> values);

    /// Rows in `row_ids` (in order), restricted to columns in `col_ids` (in order).
    [[nodiscard]] Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Features plus labels for one side of a train/test split.
struct Split {
    Matrix x;
    std::vector<Label> y;

    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }

    friend bool operator==(const Split&, const Split&) = default;
};

/// Boolean feature-inclusion vector. Immutable once built.
class BinaryMask {
public:
    BinaryMask() = default;
    explicit BinaryMask(std::vector<bool> bits);

    static BinaryMask all(std::size_t dim, bool value = true) { return BinaryMask(std::vector<bool>(dim, value)); }
    /// Parses a string of '0'/'1' characters.
    static BinaryMask from_string(std::string_view bits);

    [[nodiscard]] std::size_t dim() const noexcept { return bits_.size(); }
    [[nodiscard]] std::size_t selected_count() const noexcept { return selected_; }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i]; }
    [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }
    [[nodiscard]] std::vector<std::size_t> selected_indices() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) { return a.bits_ == b.bits_; }

private:
    std::vector<bool> bits_;
    std::size_t selected_ = 0;
};

/// Train/test feature matrices with 0-based contiguous class ids.
///
/// Immutable after construction and safe to share across threads. Reads of the
/// test split go through `test()`, which counts them; the feature-selection
/// phase only ever receives `train()`.
class FeatureDataset {
public:
    FeatureDataset() = default;
    FeatureDataset(Split train, Split test, std::size_t class_count, std::vector<std::string> class_names = {},
                   std::vector<std::string> feature_names = {});

    FeatureDataset(const FeatureDataset& other);
    FeatureDataset& operator=(const FeatureDataset& other);
    FeatureDataset(FeatureDataset&&) noexcept;
    FeatureDataset& operator=(FeatureDataset&&) noexcept;

    [[nodiscard]] const Split& train() const noexcept { return train_; }
    [[nodiscard]] const Split& test() const noexcept;

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t class_count() const noexcept { return class_count_; }
    [[nodiscard]] const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    [[nodiscard]] const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

    /// Number of `test()` calls made on this object since construction.
    [[nodiscard]] std::size_t test_reads() const noexcept { return test_reads_.load(); }

private:
    Split train_;
    Split test_;
    std::size_t dim_ = 0;
    std::size_t class_count_ = 0;
    std::vector<std::string> class_names_;
    std::vector<std::string> feature_names_;
    mutable std::atomic<std::size_t> test_reads_{0};
};

/// Keeps only the columns where `mask` is set, preserving their order.
/// Throws EmptyMask for an all-zero mask and DimMismatch on length mismatch.
[[nodiscard]] FeatureDataset apply_mask(const FeatureDataset& dataset, const BinaryMask& mask);
[[nodiscard]] Split apply_mask(const Split& split, const BinaryMask& mask);

/// Min-max scaling fitted on the train split only and applied to both splits.
/// Constant train columns map to 0.
[[nodiscard]] FeatureDataset min_max_scale(const FeatureDataset& dataset);

/// Closed box [lower, upper]^dim.
class SearchBounds {
public:
    SearchBounds() = default;
    SearchBounds(std::size_t dim, double lower = 0.0, double upper = 1.0);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double lower() const noexcept { return lower_; }
    [[nodiscard]] double upper() const noexcept { return upper_; }
    [[nodiscard]] double width() const noexcept { return upper_ - lower_; }

    void clamp(std::span<double> position) const noexcept;
    [[nodiscard]] bool contains(std::span<const double> position) const noexcept;

private:
    std::size_t dim_ = 1;
    double lower_ = 0.0;
    double upper_ = 1.0;
};

struct Agent {
    std::vector<double> position;
    std::optional<double> fitness;
};

struct RunResult {
    BinaryMask best_mask;
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// Best-so-far fitness after each iteration.
    std::vector<double> fitness_trace;
    std::size_t evaluations = 0;
    double wall_time = 0.0;
    std::uint64_t rng_seed = 0;
    std::string optimizer_name;
};

} // namespace cgofs
