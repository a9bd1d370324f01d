#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cgofs/core.hpp"

namespace cgofs::io {

/// Shortest decimal text that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

/// Parsed feature-CSV header.
struct FeatureFileHeader {
    std::size_t dim = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;
};

/// Reads one feature CSV (`f0,...,f{dim-1},label`, one sample per line) as a
/// dataset with an empty test split.
///
/// Labels become 0-based ids: ascending numeric order when every label is an
/// integer, first-occurrence order otherwise. Throws ParseError (with the
/// 1-based line number), DimMismatch, IoError.
[[nodiscard]] FeatureDataset load_csv(const std::filesystem::path& path);

/// Reads a train/test pair; test labels must occur in train (UnknownLabel).
[[nodiscard]] FeatureDataset load_dataset(const std::filesystem::path& train_path,
                                          const std::filesystem::path& test_path);

struct DatasetPaths {
    std::filesystem::path train;
    std::filesystem::path test;
};

/// `<prefix>_train.csv` / `<prefix>_test.csv`.
[[nodiscard]] DatasetPaths paired_paths(const std::filesystem::path& prefix);

/// Writes one split in the feature-CSV format with the dataset's names.
void write_csv(const std::filesystem::path& path, const Split& split, const std::vector<std::string>& feature_names,
               const std::vector<std::string>& class_names);

struct SyntheticSpec {
    std::size_t n_informative = 5;
    std::size_t n_noise = 15;
    std::size_t n_samples_per_class = 60;
    std::size_t class_count = 2;
    /// Gap between the means of neighbouring classes on every informative
    /// column.
    double class_separation = 3.0;
    /// Within-class standard deviation of every column.
    double noise_scale = 1.0;
    double test_fraction = 0.2;
    std::uint64_t seed = 9;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

struct SyntheticData {
    FeatureDataset dataset;
    BinaryMask informative;
};

/// Gaussian classes on the informative columns (placed at random positions),
/// class-independent N(0, noise_scale^2) on the rest, stratified split.
[[nodiscard]] SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// One line of a results table.
struct ResultRow {
    std::string optimizer;
    std::string classifier;
    /// Aggregate rows average `repetition` runs; run rows carry their index.
    bool aggregate = false;
    std::size_t repetition = 0;
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    double selected_count = 0.0;
    double best_fitness = 0.0;
    double evaluations = 0.0;
    std::uint64_t seed = 0;
    double fs_wall_time = 0.0;
    double classify_wall_time = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

enum class ResultFormat { Csv, Json };

[[nodiscard]] ResultFormat parse_format(std::string_view name);

struct WriteOptions {
    ResultFormat format = ResultFormat::Csv;
    /// Wall-clock columns vary between runs; leaving them out keeps files byte-stable.
    bool include_timing = true;
};

/// Columns: optimizer, classifier, repetition(s), recall, precision, f1,
/// accuracy, balanced_accuracy, selected_count, best_fitness, evaluations,
/// seed, then fs_wall_time and classify_wall_time when timing is included.
void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path, const WriteOptions& options);

/// Reads a file produced by write_results (CSV or JSON, detected by content).
[[nodiscard]] std::vector<ResultRow> read_results(const std::filesystem::path& path);

/// Whole-file helpers; throw IoError.
void write_text(const std::filesystem::path& path, const std::string& contents);
[[nodiscard]] std::string read_text(const std::filesystem::path& path);

} // namespace cgofs::io
