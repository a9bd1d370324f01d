#pragma once

/// The end-to-end experiment: feature selection on the training split with
/// each optimizer, then every final classifier trained on the selected train
/// columns and scored on the selected test columns.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgofs/baselines.hpp"
#include "cgofs/cgo.hpp"
#include "cgofs/classifiers.hpp"
#include "cgofs/fitness.hpp"
#include "cgofs/io.hpp"
#include "cgofs/metrics.hpp"
#include "cgofs/stats.hpp"

namespace cgofs::experiment {

/// Either a synthetic spec or a train/test CSV pair.
struct DataSource {
    std::optional<io::SyntheticSpec> synthetic;
    std::filesystem::path train_path;
    std::filesystem::path test_path;
};

/// "default" or comma-separated key=value pairs over the SyntheticSpec
/// fields (informative, noise, per_class, classes, separation, noise_scale,
/// test_fraction, seed); unspecified keys keep their defaults.
[[nodiscard]] io::SyntheticSpec parse_synthetic_spec(std::string_view text);

enum class RunEventKind { SelectionStarted, SelectionFinished, Evaluated };

struct RunEvent {
    RunEventKind kind;
    Algorithm optimizer;
    std::size_t repetition;
};

struct ExperimentConfig {
    DataSource data;
    std::vector<Algorithm> optimizers{Algorithm::CGO};
    std::vector<ClassifierKind> classifiers{ClassifierKind::SGD};
    FitnessConfig fitness{};
    /// Hyper-parameters of the final classifiers (kind is overridden).
    ClassifierSpec final_classifier{};
    std::size_t population = 50;
    std::size_t iterations = 100;
    std::size_t repetitions = 1;
    std::uint64_t seed = 1;
    bool min_max_scale = false;
    cgo::IntRange beta_gamma_range{1, 2};
    baselines::BaselineParams baseline_params{};
    /// Concurrent (optimizer, repetition) runs; results do not depend on it.
    std::size_t threads = 1;
    std::function<void(const RunEvent&)> on_event;

    /// Throws InvalidArgument with an actionable message.
    void validate() const;
};

/// Applies a JSON config document on top of `config`. Keys mirror the CLI
/// flags (seed, population, iterations, lambda, optimizers, classifiers,
/// repetitions, synthetic, train, test, scale, knn_k, inner_classifier,
/// threads). A key that also appears in `explicit_flags` with a different
/// value wins over the flag and adds a line to `warnings`.
void apply_config_json(std::string_view json_text, ExperimentConfig& config,
                       const std::set<std::string>& explicit_flags, std::vector<std::string>& warnings);

struct ClassifierOutcome {
    ClassifierKind classifier;
    MetricsReport report;
};

struct RunRecord {
    Algorithm optimizer;
    std::size_t repetition = 0;
    RunResult selection;
    std::vector<ClassifierOutcome> outcomes;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    std::vector<io::ResultRow> run_rows;
    std::vector<io::ResultRow> aggregate_rows;
};

/// Seeds of the repetition-level streams. Splits and final classifiers are
/// shared by every optimizer in a repetition; each optimizer gets its own
/// search stream.
[[nodiscard]] std::uint64_t repetition_seed(std::uint64_t seed, std::size_t repetition) noexcept;
[[nodiscard]] std::uint64_t optimizer_seed(std::uint64_t seed, std::size_t repetition, Algorithm algorithm) noexcept;

/// Runs one optimizer on a train-only view.
[[nodiscard]] RunResult select_features(const Split& train, std::size_t class_count, Algorithm algorithm,
                                        const ExperimentConfig& config, std::size_t repetition);

/// Trains `spec` on masked train rows and scores masked test rows.
[[nodiscard]] MetricsReport evaluate_selection(const FeatureDataset& dataset, const BinaryMask& mask,
                                               const ClassifierSpec& spec);

[[nodiscard]] FeatureDataset load_data(const ExperimentConfig& config);

[[nodiscard]] ExperimentResult run_experiment(const FeatureDataset& dataset, const ExperimentConfig& config);

/// Per-(optimizer, classifier) arithmetic means over repetitions, in the
/// order of first appearance.
[[nodiscard]] std::vector<io::ResultRow> aggregate(const std::vector<io::ResultRow>& run_rows, std::uint64_t seed);

struct RunOutputs {
    std::filesystem::path aggregate;
    std::filesystem::path runs;
    std::filesystem::path timing;
};

/// `<out>`, `<stem>_runs<ext>` and `<stem>_timing<ext>`.
[[nodiscard]] RunOutputs output_paths(const std::filesystem::path& out);

/// Loads data, runs the experiment and writes the three result files. The
/// aggregate and per-run files omit wall-clock columns so reruns are
/// byte-identical; the timing file carries them.
ExperimentResult cmd_run(const ExperimentConfig& config, const std::filesystem::path& out, io::ResultFormat format);

struct RankOptions {
    std::vector<std::string> metrics{"accuracy", "f1", "balanced_accuracy"};
    /// Empty means every classifier found.
    std::vector<std::string> classifiers;
    Direction direction = Direction::Maximize;
};

struct RankSummary {
    std::vector<std::string> treatments;
    std::vector<std::string> blocks;
    RankTable table;
};

/// Builds the block x optimizer score matrix from results files. A block is
/// one (file, classifier, repetition, metric) cell; every optimizer must be
/// present in every block. Throws InsufficientBlocks with fewer than two
/// optimizers or blocks.
[[nodiscard]] RankSummary rank_rows(const std::vector<std::vector<io::ResultRow>>& files, const RankOptions& options);
[[nodiscard]] RankSummary cmd_rank(const std::vector<std::filesystem::path>& paths, const RankOptions& options);

void write_rank(const RankSummary& summary, const std::filesystem::path& path, io::ResultFormat format);

struct SynthOutputs {
    std::filesystem::path train;
    std::filesystem::path test;
    std::filesystem::path truth;
    std::filesystem::path manifest;
};

/// Writes `<prefix>_train.csv`, `<prefix>_test.csv`, `<prefix>_truth.csv`
/// (feature names over one row of 0/1) and `<prefix>_manifest.json`.
SynthOutputs cmd_synth(const io::SyntheticSpec& spec, const std::filesystem::path& prefix);

/// Reads the spec echoed in a manifest written by cmd_synth.
[[nodiscard]] io::SyntheticSpec read_manifest(const std::filesystem::path& path);

} // namespace cgofs::experiment
