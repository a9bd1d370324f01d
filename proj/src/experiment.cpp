#include "cgofs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "cgofs/error.hpp"

namespace cgofs::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

// ------------------------------------------------------------------- config

io::SyntheticSpec parse_synthetic_spec(std::string_view text) {
    io::SyntheticSpec spec;
    if (text.empty() || text == "default") {
        return spec;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, comma - start);
        start = comma + 1;
        if (item.empty()) {
            continue;
        }
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument,
                        "synthetic spec item '" + std::string(item) + "' is not key=value");
        }
        const std::string key(item.substr(0, eq));
        const std::string value(item.substr(eq + 1));
        try {
            if (key == "informative") spec.n_informative = std::stoul(value);
            else if (key == "noise") spec.n_noise = std::stoul(value);
            else if (key == "per_class") spec.n_samples_per_class = std::stoul(value);
            else if (key == "classes") spec.class_count = std::stoul(value);
            else if (key == "separation") spec.class_separation = std::stod(value);
            else if (key == "noise_scale") spec.noise_scale = std::stod(value);
            else if (key == "test_fraction") spec.test_fraction = std::stod(value);
            else if (key == "seed") spec.seed = std::stoull(value);
            else throw Error(ErrorCode::InvalidArgument, "unknown synthetic spec key '" + key + "'");
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidArgument, "bad value for synthetic spec key '" + key + "': " + value);
        }
    }
    spec.validate();
    return spec;
}

void ExperimentConfig::validate() const {
    if (optimizers.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no optimizers selected (use --optimizers, e.g. CGO,PSO or all)");
    }
    if (classifiers.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no classifiers selected (use --classifiers, e.g. SGD,KNN,SVM)");
    }
    if (repetitions < 1) {
        throw Error(ErrorCode::InvalidArgument, "--repetitions must be at least 1");
    }
    if (population < 2) {
        throw Error(ErrorCode::InvalidArgument, "--population must be at least 2");
    }
    if (iterations < 1) {
        throw Error(ErrorCode::InvalidArgument, "--iterations must be at least 1");
    }
    if (threads < 1) {
        throw Error(ErrorCode::InvalidArgument, "--threads must be at least 1");
    }
    if (!data.synthetic && (data.train_path.empty() || data.test_path.empty())) {
        throw Error(ErrorCode::InvalidArgument, "no data: pass --synthetic, --data PREFIX, or --train and --test");
    }
    fitness.validate();
    baseline_params.validate();
}

namespace {

template <typename T>
std::string list_to_string(const std::vector<T>& items) {
    std::string s;
    for (const auto& item : items) {
        if (!s.empty()) {
            s += ',';
        }
        s += to_string(item);
    }
    return s;
}

std::vector<Algorithm> algorithms_from_json(const json& j) {
    std::vector<Algorithm> out;
    if (j.is_string() && j.get<std::string>() == "all") {
        return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    }
    for (const auto& item : j) {
        out.push_back(parse_algorithm(item.get<std::string>()));
    }
    return out;
}

std::vector<ClassifierKind> classifiers_from_json(const json& j) {
    std::vector<ClassifierKind> out;
    if (j.is_string() && j.get<std::string>() == "all") {
        return {std::begin(kAllClassifiers), std::end(kAllClassifiers)};
    }
    for (const auto& item : j) {
        out.push_back(parse_classifier(item.get<std::string>()));
    }
    return out;
}

} // namespace

void apply_config_json(std::string_view json_text, ExperimentConfig& config,
                       const std::set<std::string>& explicit_flags, std::vector<std::string>& warnings) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("config file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::ParseError, "config file must hold a JSON object");
    }

    const auto apply = [&](const std::string& key, auto current, auto update) {
        if (!doc.contains(key)) {
            return;
        }
        const std::string before = current();
        try {
            update(doc.at(key));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, "config key '" + key + "': " + e.what());
        }
        const std::string after = current();
        if (explicit_flags.count(key) != 0 && before != after) {
            warnings.push_back("config file overrides --" + key + " (" + before + " -> " + after + ")");
        }
    };

    apply("seed", [&] { return std::to_string(config.seed); },
          [&](const json& v) { config.seed = v.get<std::uint64_t>(); });
    apply("population", [&] { return std::to_string(config.population); },
          [&](const json& v) { config.population = v.get<std::size_t>(); });
    apply("iterations", [&] { return std::to_string(config.iterations); },
          [&](const json& v) { config.iterations = v.get<std::size_t>(); });
    apply("repetitions", [&] { return std::to_string(config.repetitions); },
          [&](const json& v) { config.repetitions = v.get<std::size_t>(); });
    apply("threads", [&] { return std::to_string(config.threads); },
          [&](const json& v) { config.threads = v.get<std::size_t>(); });
    apply("lambda", [&] { return io::format_double(config.fitness.lambda); },
          [&](const json& v) { config.fitness.lambda = v.get<double>(); });
    apply("knn_k", [&] { return std::to_string(config.final_classifier.knn_k); },
          [&](const json& v) {
              config.final_classifier.knn_k = v.get<std::size_t>();
              config.fitness.inner_classifier.knn_k = config.final_classifier.knn_k;
          });
    apply("scale", [&] { return std::string(config.min_max_scale ? "true" : "false"); },
          [&](const json& v) { config.min_max_scale = v.get<bool>(); });
    apply("inner_classifier", [&] { return std::string(to_string(config.fitness.inner_classifier.kind)); },
          [&](const json& v) { config.fitness.inner_classifier.kind = parse_classifier(v.get<std::string>()); });
    apply("optimizers", [&] { return list_to_string(config.optimizers); },
          [&](const json& v) { config.optimizers = algorithms_from_json(v); });
    apply("classifiers", [&] { return list_to_string(config.classifiers); },
          [&](const json& v) { config.classifiers = classifiers_from_json(v); });
    apply("synthetic", [&] { return std::string(config.data.synthetic ? "set" : "unset"); },
          [&](const json& v) { config.data.synthetic = parse_synthetic_spec(v.get<std::string>()); });
    apply("train", [&] { return config.data.train_path.string(); },
          [&](const json& v) { config.data.train_path = v.get<std::string>(); });
    apply("test", [&] { return config.data.test_path.string(); },
          [&](const json& v) { config.data.test_path = v.get<std::string>(); });
}

// -------------------------------------------------------------------- seeds

std::uint64_t repetition_seed(std::uint64_t seed, std::size_t repetition) noexcept {
    return derive_seed(seed, repetition);
}

std::uint64_t optimizer_seed(std::uint64_t seed, std::size_t repetition, Algorithm algorithm) noexcept {
    return derive_seed(repetition_seed(seed, repetition), 100 + static_cast<std::uint64_t>(algorithm));
}

namespace {

constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kInnerClassifierStream = 2;
constexpr std::uint64_t kFinalClassifierStream = 200;

} // namespace

// --------------------------------------------------------------------- runs

RunResult select_features(const Split& train, std::size_t class_count, Algorithm algorithm,
                          const ExperimentConfig& config, std::size_t repetition) {
    const std::uint64_t rep_seed = repetition_seed(config.seed, repetition);
    FitnessConfig fitness = config.fitness;
    fitness.inner_classifier.seed = derive_seed(rep_seed, kInnerClassifierStream);
    RandomSource split_rng = RandomSource::substream(rep_seed, kSplitStream);
    const FeatureSelectionObjective objective(train, class_count, fitness, split_rng);
    const Objective fn = objective.as_objective();

    const std::size_t dim = train.x.cols();
    RandomSource rng(optimizer_seed(config.seed, repetition, algorithm));
    if (algorithm == Algorithm::CGO) {
        cgo::CgoConfig cfg;
        cfg.population = config.population;
        cfg.iterations = config.iterations;
        cfg.bounds = SearchBounds(dim);
        cfg.mask_threshold = fitness.threshold;
        cfg.beta_gamma_range = config.beta_gamma_range;
        return cgo::optimize(fn, cfg, rng);
    }
    OptimizerConfig cfg;
    cfg.population = config.population;
    cfg.iterations = config.iterations;
    cfg.bounds = SearchBounds(dim);
    cfg.mask_threshold = fitness.threshold;
    return baselines::optimize_baseline(algorithm, fn, cfg, config.baseline_params, rng);
}

MetricsReport evaluate_selection(const FeatureDataset& dataset, const BinaryMask& mask, const ClassifierSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    const FeatureDataset masked = apply_mask(dataset, mask);
    const Split& test = masked.test();
    if (test.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, "test split is empty");
    }
    const Model model = train(spec, masked.train().x, masked.train().y, masked.class_count());
    const auto predicted = predict(model, test.x);
    MetricsReport report = compute_report(confusion(test.y, predicted, masked.class_count()));
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

FeatureDataset load_data(const ExperimentConfig& config) {
    FeatureDataset data = config.data.synthetic ? io::generate_synthetic(*config.data.synthetic).dataset
                                                : io::load_dataset(config.data.train_path, config.data.test_path);
    return config.min_max_scale ? min_max_scale(data) : data;
}

namespace {

io::ResultRow make_row(const RunRecord& run, const ClassifierOutcome& outcome) {
    io::ResultRow row;
    row.optimizer = std::string(to_string(run.optimizer));
    row.classifier = std::string(to_string(outcome.classifier));
    row.repetition = run.repetition;
    row.recall = outcome.report.recall;
    row.precision = outcome.report.precision;
    row.f1 = outcome.report.f1;
    row.accuracy = outcome.report.accuracy;
    row.balanced_accuracy = outcome.report.balanced_accuracy;
    row.selected_count = static_cast<double>(run.selection.best_mask.selected_count());
    row.best_fitness = run.selection.best_fitness;
    row.evaluations = static_cast<double>(run.selection.evaluations);
    row.seed = run.selection.rng_seed;
    row.fs_wall_time = run.selection.wall_time;
    row.classify_wall_time = outcome.report.wall_time;
    return row;
}

} // namespace

ExperimentResult run_experiment(const FeatureDataset& dataset, const ExperimentConfig& config) {
    config.validate();

    struct Job {
        Algorithm optimizer;
        std::size_t repetition;
    };
    std::vector<Job> jobs;
    for (Algorithm a : config.optimizers) {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
            jobs.push_back({a, rep});
        }
    }

    std::mutex event_mutex;
    const auto emit = [&](RunEventKind kind, const Job& job) {
        if (config.on_event) {
            std::lock_guard lock(event_mutex);
            config.on_event(RunEvent{kind, job.optimizer, job.repetition});
        }
    };

    std::vector<RunRecord> records(jobs.size());
    const auto run_job = [&](std::size_t index) {
        const Job& job = jobs[index];
        RunRecord& record = records[index];
        record.optimizer = job.optimizer;
        record.repetition = job.repetition;

        emit(RunEventKind::SelectionStarted, job);
        record.selection = select_features(dataset.train(), dataset.class_count(), job.optimizer, config,
                                           job.repetition);
        emit(RunEventKind::SelectionFinished, job);

        BinaryMask mask = record.selection.best_mask;
        if (mask.selected_count() == 0) {
            // Only reachable if no evaluated position selected anything; fall back to all features.
            mask = BinaryMask::all(dataset.dim());
        }
        const std::uint64_t rep_seed = repetition_seed(config.seed, job.repetition);
        for (ClassifierKind kind : config.classifiers) {
            ClassifierSpec spec = config.final_classifier;
            spec.kind = kind;
            spec.seed = derive_seed(rep_seed, kFinalClassifierStream + static_cast<std::uint64_t>(kind));
            record.outcomes.push_back({kind, evaluate_selection(dataset, mask, spec)});
        }
        emit(RunEventKind::Evaluated, job);
    };

    if (config.threads <= 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            run_job(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        const std::size_t n_workers = std::min(config.threads, jobs.size());
        for (std::size_t w = 0; w < n_workers; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) {
                    try {
                        run_job(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        for (auto& t : workers) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    ExperimentResult result;
    for (const RunRecord& record : records) {
        for (const auto& outcome : record.outcomes) {
            result.run_rows.push_back(make_row(record, outcome));
        }
    }
    result.aggregate_rows = aggregate(result.run_rows, config.seed);
    result.runs = std::move(records);
    return result;
}

std::vector<io::ResultRow> aggregate(const std::vector<io::ResultRow>& run_rows, std::uint64_t seed) {
    std::vector<io::ResultRow> out;
    std::vector<std::size_t> counts;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const auto& row : run_rows) {
        const auto key = std::make_pair(row.optimizer, row.classifier);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            io::ResultRow agg;
            agg.optimizer = row.optimizer;
            agg.classifier = row.classifier;
            agg.aggregate = true;
            agg.seed = seed;
            out.push_back(agg);
            counts.push_back(0);
        }
        io::ResultRow& agg = out[it->second];
        ++counts[it->second];
        agg.recall += row.recall;
        agg.precision += row.precision;
        agg.f1 += row.f1;
        agg.accuracy += row.accuracy;
        agg.balanced_accuracy += row.balanced_accuracy;
        agg.selected_count += row.selected_count;
        agg.best_fitness += row.best_fitness;
        agg.evaluations += row.evaluations;
        agg.fs_wall_time += row.fs_wall_time;
        agg.classify_wall_time += row.classify_wall_time;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double n = static_cast<double>(counts[i]);
        io::ResultRow& agg = out[i];
        agg.repetition = counts[i];
        agg.recall /= n;
        agg.precision /= n;
        agg.f1 /= n;
        agg.accuracy /= n;
        agg.balanced_accuracy /= n;
        agg.selected_count /= n;
        agg.best_fitness /= n;
        agg.evaluations /= n;
        agg.fs_wall_time /= n;
        agg.classify_wall_time /= n;
    }
    return out;
}

RunOutputs output_paths(const fs::path& out) {
    const fs::path dir = out.parent_path();
    const std::string stem = out.stem().string();
    const std::string ext = out.extension().string();
    return {out, dir / (stem + "_runs" + ext), dir / (stem + "_timing" + ext)};
}

ExperimentResult cmd_run(const ExperimentConfig& config, const fs::path& out, io::ResultFormat format) {
    config.validate();
    const FeatureDataset dataset = load_data(config);
    ExperimentResult result = run_experiment(dataset, config);
    const RunOutputs paths = output_paths(out);
    io::write_results(result.aggregate_rows, paths.aggregate, {format, false});
    io::write_results(result.run_rows, paths.runs, {format, false});
    io::write_results(result.aggregate_rows, paths.timing, {format, true});
    return result;
}

// --------------------------------------------------------------------- rank

namespace {

double metric_value(const io::ResultRow& row, const std::string& metric) {
    if (metric == "recall") return row.recall;
    if (metric == "precision") return row.precision;
    if (metric == "f1") return row.f1;
    if (metric == "accuracy") return row.accuracy;
    if (metric == "balanced_accuracy") return row.balanced_accuracy;
    if (metric == "best_fitness") return row.best_fitness;
    if (metric == "selected_count") return row.selected_count;
    throw Error(ErrorCode::InvalidArgument, "unknown metric '" + metric + "'");
}

} // namespace

RankSummary rank_rows(const std::vector<std::vector<io::ResultRow>>& files, const RankOptions& options) {
    if (options.metrics.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no metrics selected for ranking");
    }
    std::vector<std::string> treatments;
    std::vector<std::string> block_names;
    std::map<std::string, std::map<std::string, double>> blocks;

    for (std::size_t f = 0; f < files.size(); ++f) {
        for (const auto& row : files[f]) {
            if (!options.classifiers.empty() &&
                std::find(options.classifiers.begin(), options.classifiers.end(), row.classifier) ==
                    options.classifiers.end()) {
                continue;
            }
            if (std::find(treatments.begin(), treatments.end(), row.optimizer) == treatments.end()) {
                treatments.push_back(row.optimizer);
            }
            for (const auto& metric : options.metrics) {
                const std::string key = "file" + std::to_string(f) + "/" + row.classifier + "/" +
                                        (row.aggregate ? "mean" : "rep" + std::to_string(row.repetition)) + "/" +
                                        metric;
                auto [it, inserted] = blocks.try_emplace(key);
                if (inserted) {
                    block_names.push_back(key);
                }
                it->second[row.optimizer] = metric_value(row, metric);
            }
        }
    }

    // Known optimizer names report in canonical order.
    std::stable_sort(treatments.begin(), treatments.end(), [](const std::string& a, const std::string& b) {
        const auto rank = [](const std::string& name) {
            for (std::size_t i = 0; i < std::size(kAllAlgorithms); ++i) {
                if (to_string(kAllAlgorithms[i]) == name) {
                    return i;
                }
            }
            return std::size(kAllAlgorithms);
        };
        return rank(a) < rank(b);
    });

    if (treatments.size() < 2) {
        throw Error(ErrorCode::InsufficientBlocks, "ranking needs results for at least two optimizers");
    }
    if (block_names.size() < 2) {
        throw Error(ErrorCode::InsufficientBlocks, "ranking needs at least two blocks");
    }

    Matrix scores(block_names.size(), treatments.size());
    for (std::size_t b = 0; b < block_names.size(); ++b) {
        const auto& cells = blocks.at(block_names[b]);
        for (std::size_t t = 0; t < treatments.size(); ++t) {
            const auto it = cells.find(treatments[t]);
            if (it == cells.end()) {
                throw Error(ErrorCode::InsufficientBlocks,
                            "block " + block_names[b] + " has no result for " + treatments[t]);
            }
            scores(b, t) = it->second;
        }
    }
    return {treatments, block_names, friedman(scores, options.direction)};
}

RankSummary cmd_rank(const std::vector<fs::path>& paths, const RankOptions& options) {
    std::vector<std::vector<io::ResultRow>> files;
    for (const auto& p : paths) {
        files.push_back(io::read_results(p));
    }
    return rank_rows(files, options);
}

void write_rank(const RankSummary& summary, const fs::path& path, io::ResultFormat format) {
    if (format == io::ResultFormat::Json) {
        json doc = {{"treatments", summary.treatments},
                    {"mean_ranks", summary.table.mean_ranks},
                    {"statistic", summary.table.statistic},
                    {"p_value", summary.table.p_value},
                    {"blocks", summary.blocks}};
        io::write_text(path, doc.dump(2) + "\n");
        return;
    }
    std::string out = "optimizer,mean_rank\n";
    for (std::size_t t = 0; t < summary.treatments.size(); ++t) {
        out += summary.treatments[t] + ',' + io::format_double(summary.table.mean_ranks[t]) + '\n';
    }
    out += "# blocks=" + std::to_string(summary.blocks.size()) +
           " statistic=" + io::format_double(summary.table.statistic) +
           " p_value=" + io::format_double(summary.table.p_value) + '\n';
    io::write_text(path, out);
}

// -------------------------------------------------------------------- synth

namespace {

json spec_to_json(const io::SyntheticSpec& spec) {
    return {{"informative", spec.n_informative},   {"noise", spec.n_noise},
            {"per_class", spec.n_samples_per_class}, {"classes", spec.class_count},
            {"separation", spec.class_separation}, {"noise_scale", spec.noise_scale},
            {"test_fraction", spec.test_fraction}, {"seed", spec.seed}};
}

} // namespace

SynthOutputs cmd_synth(const io::SyntheticSpec& spec, const fs::path& prefix) {
    const io::SyntheticData data = io::generate_synthetic(spec);
    const auto pair = io::paired_paths(prefix);
    SynthOutputs out{pair.train, pair.test, fs::path(prefix.string() + "_truth.csv"),
                     fs::path(prefix.string() + "_manifest.json")};

    const FeatureDataset& ds = data.dataset;
    io::write_csv(out.train, ds.train(), ds.feature_names(), ds.class_names());
    io::write_csv(out.test, ds.test(), ds.feature_names(), ds.class_names());

    std::string truth;
    std::string bits;
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        truth += (j ? "," : "") + ds.feature_names()[j];
        bits += std::string(j ? "," : "") + (data.informative[j] ? "1" : "0");
    }
    io::write_text(out.truth, truth + "\n" + bits + "\n");

    const json manifest = {{"spec", spec_to_json(spec)},
                           {"train", out.train.filename().string()},
                           {"test", out.test.filename().string()},
                           {"truth", out.truth.filename().string()},
                           {"informative_mask", data.informative.to_string()},
                           {"train_rows", ds.train().size()},
                           {"test_rows", ds.test().size()}};
    io::write_text(out.manifest, manifest.dump(2) + "\n");
    return out;
}

io::SyntheticSpec read_manifest(const fs::path& path) {
    try {
        const json doc = json::parse(io::read_text(path));
        const json& s = doc.at("spec");
        io::SyntheticSpec spec;
        spec.n_informative = s.at("informative").get<std::size_t>();
        spec.n_noise = s.at("noise").get<std::size_t>();
        spec.n_samples_per_class = s.at("per_class").get<std::size_t>();
        spec.class_count = s.at("classes").get<std::size_t>();
        spec.class_separation = s.at("separation").get<double>();
        spec.noise_scale = s.at("noise_scale").get<double>();
        spec.test_fraction = s.at("test_fraction").get<double>();
        spec.seed = s.at("seed").get<std::uint64_t>();
        return spec;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

} // namespace cgofs::experiment
