// cgofs: feature selection with Chaos Game Optimization and eight baselines.
//
//   cgofs synth --out data/toy
//   cgofs run --data data/toy --optimizers all --classifiers all --out results/toy.csv
//   cgofs rank results/toy_runs.csv --out results/toy_rank.csv

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cgofs/error.hpp"
#include "cgofs/experiment.hpp"

namespace {

using namespace cgofs;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<Algorithm> parse_optimizers(const std::string& text) {
    if (text == "all") {
        return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    }
    std::vector<Algorithm> out;
    for (const auto& name : split_list(text)) {
        out.push_back(parse_algorithm(name));
    }
    return out;
}

std::vector<ClassifierKind> parse_classifiers(const std::string& text) {
    if (text == "all") {
        return {std::begin(kAllClassifiers), std::end(kAllClassifiers)};
    }
    std::vector<ClassifierKind> out;
    for (const auto& name : split_list(text)) {
        out.push_back(parse_classifier(name));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wrapper feature selection with Chaos Game Optimization and baseline optimizers"};
    app.require_subcommand(1);

    // ---------------------------------------------------------------- run
    auto* run = app.add_subcommand("run", "select features on train data, score classifiers on test data");
    std::string synthetic, data_prefix, train_path, test_path, config_path;
    std::string optimizers = "CGO", classifiers = "SGD", inner = "SVM", format = "csv", out = "results.csv";
    std::uint64_t seed = 1;
    std::size_t population = 50, iterations = 100, repetitions = 1, knn_k = 5, threads = 1;
    double lambda = 0.99;
    bool scale = false;
    run->add_option("--synthetic", synthetic, "synthetic data: 'default' or key=value list");
    run->add_option("--data", data_prefix, "dataset prefix; reads PREFIX_train.csv and PREFIX_test.csv");
    run->add_option("--train", train_path, "training feature CSV");
    run->add_option("--test", test_path, "test feature CSV");
    run->add_option("--config", config_path, "JSON config file (its values win over flags)");
    run->add_option("--optimizers", optimizers, "comma list of CGO,PSO,MVO,GWO,MFO,WOA,FFA,BAT,HGS or 'all'")
        ->capture_default_str();
    run->add_option("--classifiers", classifiers, "comma list of SGD,KNN,SVM or 'all'")->capture_default_str();
    run->add_option("--inner-classifier", inner, "classifier inside the fitness function")->capture_default_str();
    run->add_option("--seed", seed, "master seed")->capture_default_str();
    run->add_option("--population", population, "agents per optimizer")->capture_default_str();
    run->add_option("--iterations", iterations, "iterations per optimizer")->capture_default_str();
    run->add_option("--repetitions", repetitions, "independent repetitions")->capture_default_str();
    run->add_option("--lambda", lambda, "fitness weight of the classification error")->capture_default_str();
    run->add_option("--knn-k", knn_k, "neighbours for KNN")->capture_default_str();
    run->add_option("--threads", threads, "concurrent runs")->capture_default_str();
    run->add_flag("--scale", scale, "min-max scale features (fitted on train)");
    run->add_option("--out", out, "aggregate results path")->capture_default_str();
    run->add_option("--format", format, "csv or json")->capture_default_str();

    // --------------------------------------------------------------- rank
    auto* rank = app.add_subcommand("rank", "Friedman mean ranks of optimizers over results files");
    std::vector<std::string> rank_inputs;
    std::string rank_metrics = "accuracy,f1,balanced_accuracy", rank_classifiers, direction = "maximize";
    std::string rank_out, rank_format = "csv";
    rank->add_option("files", rank_inputs, "results files written by 'run'")->required();
    rank->add_option("--metrics", rank_metrics, "comma list of metrics; each one is a block")->capture_default_str();
    rank->add_option("--classifiers", rank_classifiers, "restrict to these classifiers");
    rank->add_option("--direction", direction, "maximize or minimize")->capture_default_str();
    rank->add_option("--out", rank_out, "write the ranking here instead of stdout");
    rank->add_option("--format", rank_format, "csv or json")->capture_default_str();

    // -------------------------------------------------------------- synth
    auto* synth = app.add_subcommand("synth", "write a synthetic dataset with known informative features");
    io::SyntheticSpec spec;
    std::string synth_out = "synthetic";
    synth->add_option("--informative", spec.n_informative)->capture_default_str();
    synth->add_option("--noise", spec.n_noise)->capture_default_str();
    synth->add_option("--per-class", spec.n_samples_per_class)->capture_default_str();
    synth->add_option("--classes", spec.class_count)->capture_default_str();
    synth->add_option("--separation", spec.class_separation)->capture_default_str();
    synth->add_option("--noise-scale", spec.noise_scale)->capture_default_str();
    synth->add_option("--test-fraction", spec.test_fraction)->capture_default_str();
    synth->add_option("--seed", spec.seed)->capture_default_str();
    synth->add_option("--out", synth_out, "output prefix")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            experiment::ExperimentConfig config;
            if (!synthetic.empty()) {
                config.data.synthetic = experiment::parse_synthetic_spec(synthetic);
            } else if (!data_prefix.empty()) {
                const auto paths = io::paired_paths(data_prefix);
                config.data.train_path = paths.train;
                config.data.test_path = paths.test;
            } else {
                config.data.train_path = train_path;
                config.data.test_path = test_path;
            }
            config.optimizers = parse_optimizers(optimizers);
            config.classifiers = parse_classifiers(classifiers);
            config.fitness.inner_classifier.kind = parse_classifier(inner);
            config.fitness.inner_classifier.knn_k = knn_k;
            config.final_classifier.knn_k = knn_k;
            config.fitness.lambda = lambda;
            config.seed = seed;
            config.population = population;
            config.iterations = iterations;
            config.repetitions = repetitions;
            config.threads = threads;
            config.min_max_scale = scale;

            if (!config_path.empty()) {
                std::set<std::string> explicit_flags;
                const std::pair<const char*, const char*> names[] = {
                    {"--seed", "seed"},         {"--population", "population"},
                    {"--iterations", "iterations"}, {"--repetitions", "repetitions"},
                    {"--lambda", "lambda"},     {"--optimizers", "optimizers"},
                    {"--classifiers", "classifiers"}, {"--synthetic", "synthetic"},
                    {"--train", "train"},       {"--test", "test"},
                    {"--scale", "scale"},       {"--knn-k", "knn_k"},
                    {"--inner-classifier", "inner_classifier"}, {"--threads", "threads"}};
                for (const auto& [flag, key] : names) {
                    if (run->count(flag) > 0) {
                        explicit_flags.insert(key);
                    }
                }
                std::vector<std::string> warnings;
                experiment::apply_config_json(io::read_text(config_path), config, explicit_flags, warnings);
                for (const auto& w : warnings) {
                    std::cerr << "warning: " << w << '\n';
                }
            }

            config.on_event = [](const experiment::RunEvent& e) {
                if (e.kind == experiment::RunEventKind::SelectionFinished) {
                    std::cerr << "selected features with " << to_string(e.optimizer) << " (repetition "
                              << e.repetition << ")\n";
                }
            };
            const auto result = experiment::cmd_run(config, out, io::parse_format(format));
            const auto paths = experiment::output_paths(out);
            std::cerr << "wrote " << result.aggregate_rows.size() << " aggregate rows to " << paths.aggregate.string()
                      << ", per-run rows to " << paths.runs.string() << ", timings to " << paths.timing.string()
                      << '\n';
        } else if (*rank) {
            experiment::RankOptions options;
            options.metrics = split_list(rank_metrics);
            options.classifiers = split_list(rank_classifiers);
            if (direction == "maximize") {
                options.direction = Direction::Maximize;
            } else if (direction == "minimize") {
                options.direction = Direction::Minimize;
            } else {
                throw Error(ErrorCode::InvalidArgument, "--direction must be maximize or minimize");
            }
            std::vector<std::filesystem::path> paths(rank_inputs.begin(), rank_inputs.end());
            const auto summary = experiment::cmd_rank(paths, options);
            const auto fmt = io::parse_format(rank_format);
            if (!rank_out.empty()) {
                experiment::write_rank(summary, rank_out, fmt);
            }
            std::cout << "optimizer  mean_rank\n";
            for (std::size_t t = 0; t < summary.treatments.size(); ++t) {
                std::cout << summary.treatments[t] << "  " << io::format_double(summary.table.mean_ranks[t]) << '\n';
            }
            std::cout << "blocks " << summary.blocks.size() << "  chi2 " << io::format_double(summary.table.statistic)
                      << "  p " << io::format_double(summary.table.p_value) << '\n';
        } else if (*synth) {
            spec.validate();
            const auto files = experiment::cmd_synth(spec, synth_out);
            std::cerr << "wrote " << files.train.string() << ", " << files.test.string() << ", "
                      << files.truth.string() << ", " << files.manifest.string() << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
