#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cgofs/experiment.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace cgofs;
using namespace cgofs::experiment;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quick_config() {
    ExperimentConfig config;
    config.data.synthetic = io::SyntheticSpec{};
    config.population = 6;
    config.iterations = 3;
    return config;
}

io::ResultRow score_row(const std::string& optimizer, const std::string& classifier, double value) {
    io::ResultRow row;
    row.optimizer = optimizer;
    row.classifier = classifier;
    row.aggregate = true;
    row.repetition = 1;
    row.accuracy = value;
    row.f1 = value;
    row.balanced_accuracy = value;
    return row;
}

} // namespace

TEST_CASE("synthetic spec parsing") {
    const auto def = parse_synthetic_spec("default");
    CHECK(def.n_informative == 5);
    CHECK(def.n_noise == 15);
    const auto custom = parse_synthetic_spec("informative=3,noise=7,per_class=40,classes=3,separation=2.5,seed=11");
    CHECK(custom.n_informative == 3);
    CHECK(custom.n_noise == 7);
    CHECK(custom.n_samples_per_class == 40);
    CHECK(custom.class_count == 3);
    CHECK(custom.class_separation == 2.5);
    CHECK(custom.seed == 11);
    CHECK_ERROR_CODE(parse_synthetic_spec("colour=red"), ErrorCode::InvalidArgument);
    CHECK_ERROR_CODE(parse_synthetic_spec("noise=abc"), ErrorCode::InvalidArgument);
}

TEST_CASE("config validation") {
    auto config = quick_config();
    config.optimizers.clear();
    CHECK_ERROR_CODE(config.validate(), ErrorCode::InvalidArgument);
    config = quick_config();
    config.classifiers.clear();
    CHECK_ERROR_CODE(config.validate(), ErrorCode::InvalidArgument);
    config = quick_config();
    config.repetitions = 0;
    CHECK_ERROR_CODE(config.validate(), ErrorCode::InvalidArgument);
    config = quick_config();
    config.data.synthetic.reset();
    CHECK_ERROR_CODE(config.validate(), ErrorCode::InvalidArgument);
}

TEST_CASE("config file wins over flags with a warning") {
    auto config = quick_config();
    config.seed = 5;
    config.population = 8;
    std::vector<std::string> warnings;
    apply_config_json(R"({"seed": 9, "iterations": 4, "optimizers": ["pso", "CGO"], "classifiers": "all"})",
                      config, {"seed", "population"}, warnings);
    CHECK(config.seed == 9);
    CHECK(config.iterations == 4);
    CHECK(config.population == 8);
    CHECK(config.optimizers == std::vector<Algorithm>{Algorithm::PSO, Algorithm::CGO});
    CHECK(config.classifiers.size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("--seed") != std::string::npos);
    CHECK_ERROR_CODE(apply_config_json("{not json", config, {}, warnings), ErrorCode::ParseError);
    CHECK_ERROR_CODE(apply_config_json(R"({"seed": "x"})", config, {}, warnings), ErrorCode::ParseError);
}

TEST_CASE("feature selection never reads the test split") {
    auto config = quick_config();
    config.optimizers = {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    const auto dataset = load_data(config);
    std::size_t reads_at_start = 0;
    std::size_t checked = 0;
    config.on_event = [&](const RunEvent& e) {
        if (e.kind == RunEventKind::SelectionStarted) {
            reads_at_start = dataset.test_reads();
        } else if (e.kind == RunEventKind::SelectionFinished) {
            CHECK(dataset.test_reads() == reads_at_start);
            ++checked;
        }
    };
    (void)run_experiment(dataset, config);
    CHECK(checked == 9);
    CHECK(dataset.test_reads() > 0);
}

TEST_CASE("smallest configuration gives one aggregated row") {
    const auto dir = test::scratch_dir("exp_small");
    auto config = quick_config();
    const auto result = cmd_run(config, dir / "results.csv", io::ResultFormat::Csv);
    CHECK(result.aggregate_rows.size() == 1);
    const auto rows = io::read_results(dir / "results.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].optimizer == "CGO");
    CHECK(rows[0].classifier == "SGD");
    CHECK(rows[0].evaluations == 6 + 4 * 6 * 3);
    CHECK(fs::exists(dir / "results_runs.csv"));
    CHECK(fs::exists(dir / "results_timing.csv"));
}

TEST_CASE("nine optimizers by three classifiers give 27 aggregated rows") {
    const auto dir = test::scratch_dir("exp_27");
    auto config = quick_config();
    config.optimizers = {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    config.classifiers = {std::begin(kAllClassifiers), std::end(kAllClassifiers)};
    (void)cmd_run(config, dir / "r.json", io::ResultFormat::Json);
    const auto rows = io::read_results(dir / "r.json");
    CHECK(rows.size() == 27);
    std::set<std::pair<std::string, std::string>> combos;
    for (const auto& r : rows) {
        combos.emplace(r.optimizer, r.classifier);
    }
    CHECK(combos.size() == 27);
    const auto timing = io::read_results(dir / "r_timing.json");
    REQUIRE(timing.size() == 27);
    for (const auto& r : timing) {
        CHECK(r.fs_wall_time > 0.0);
    }
}

TEST_CASE("reruns are byte-identical and independent of the thread count") {
    const auto dir = test::scratch_dir("exp_rerun");
    auto config = quick_config();
    config.optimizers = {Algorithm::CGO, Algorithm::GWO, Algorithm::BAT};
    config.classifiers = {ClassifierKind::SGD, ClassifierKind::KNN};
    config.repetitions = 2;
    (void)cmd_run(config, dir / "a.csv", io::ResultFormat::Csv);
    (void)cmd_run(config, dir / "b.csv", io::ResultFormat::Csv);
    config.threads = 4;
    (void)cmd_run(config, dir / "c.csv", io::ResultFormat::Csv);
    const auto a = io::read_text(dir / "a.csv");
    CHECK(a == io::read_text(dir / "b.csv"));
    CHECK(a == io::read_text(dir / "c.csv"));
    CHECK(io::read_text(dir / "a_runs.csv") == io::read_text(dir / "c_runs.csv"));
    config.seed = 2;
    (void)cmd_run(config, dir / "d.csv", io::ResultFormat::Csv);
    CHECK(a != io::read_text(dir / "d.csv"));
}

TEST_CASE("aggregate rows are the means of the run rows") {
    auto config = quick_config();
    config.optimizers = {Algorithm::CGO, Algorithm::PSO};
    config.classifiers = {ClassifierKind::SGD, ClassifierKind::SVM};
    config.repetitions = 3;
    const auto dataset = load_data(config);
    const auto result = run_experiment(dataset, config);
    CHECK(result.run_rows.size() == 12);
    REQUIRE(result.aggregate_rows.size() == 4);
    for (const auto& agg : result.aggregate_rows) {
        CHECK(agg.aggregate);
        CHECK(agg.repetition == 3);
        double sum[7] = {};
        int n = 0;
        for (const auto& r : result.run_rows) {
            if (r.optimizer == agg.optimizer && r.classifier == agg.classifier) {
                sum[0] += r.recall;
                sum[1] += r.precision;
                sum[2] += r.f1;
                sum[3] += r.accuracy;
                sum[4] += r.balanced_accuracy;
                sum[5] += r.selected_count;
                sum[6] += r.best_fitness;
                ++n;
            }
        }
        REQUIRE(n == 3);
        CHECK(std::abs(agg.recall - sum[0] / 3) <= 1e-12);
        CHECK(std::abs(agg.precision - sum[1] / 3) <= 1e-12);
        CHECK(std::abs(agg.f1 - sum[2] / 3) <= 1e-12);
        CHECK(std::abs(agg.accuracy - sum[3] / 3) <= 1e-12);
        CHECK(std::abs(agg.balanced_accuracy - sum[4] / 3) <= 1e-12);
        CHECK(std::abs(agg.selected_count - sum[5] / 3) <= 1e-12);
        CHECK(std::abs(agg.best_fitness - sum[6] / 3) <= 1e-12);
    }
}

TEST_CASE("output paths") {
    const auto p = output_paths("out/results.csv");
    CHECK(p.aggregate == fs::path("out/results.csv"));
    CHECK(p.runs == fs::path("out/results_runs.csv"));
    CHECK(p.timing == fs::path("out/results_timing.csv"));
}

TEST_CASE("a treatment that wins every block ranks 1") {
    std::vector<io::ResultRow> rows;
    for (const char* clf : {"SGD", "KNN", "SVM"}) {
        rows.push_back(score_row("PSO", clf, 0.8));
        rows.push_back(score_row("CGO", clf, 0.9));
        rows.push_back(score_row("GWO", clf, 0.7));
    }
    const auto summary = rank_rows({rows}, RankOptions{});
    CHECK(summary.treatments == std::vector<std::string>{"CGO", "PSO", "GWO"});
    CHECK(summary.blocks.size() == 9);
    CHECK(summary.table.mean_ranks == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("hand-built 3 x 3 table") {
    // Blocks: accuracy / f1 / balanced accuracy of one SGD row per optimizer.
    //          CGO   PSO   MVO
    // acc      0.9   0.8   0.8    ranks 1   2.5 2.5
    // f1       0.7   0.9   0.8    ranks 3   1   2
    // bal      0.6   0.6   0.6    ranks 2   2   2
    std::vector<io::ResultRow> rows{score_row("CGO", "SGD", 0), score_row("PSO", "SGD", 0),
                                    score_row("MVO", "SGD", 0)};
    rows[0].accuracy = 0.9, rows[0].f1 = 0.7, rows[0].balanced_accuracy = 0.6;
    rows[1].accuracy = 0.8, rows[1].f1 = 0.9, rows[1].balanced_accuracy = 0.6;
    rows[2].accuracy = 0.8, rows[2].f1 = 0.8, rows[2].balanced_accuracy = 0.6;
    const auto summary = rank_rows({rows}, RankOptions{});
    REQUIRE(summary.treatments == std::vector<std::string>{"CGO", "PSO", "MVO"});
    CHECK(summary.table.mean_ranks[0] == doctest::Approx(2.0));
    CHECK(summary.table.mean_ranks[1] == doctest::Approx(5.5 / 3.0));
    CHECK(summary.table.mean_ranks[2] == doctest::Approx(6.5 / 3.0));
}

TEST_CASE("rank errors") {
    std::vector<io::ResultRow> single{score_row("CGO", "SGD", 0.9), score_row("CGO", "KNN", 0.8)};
    CHECK_ERROR_CODE(rank_rows({single}, RankOptions{}), ErrorCode::InsufficientBlocks);
    std::vector<io::ResultRow> missing{score_row("CGO", "SGD", 0.9), score_row("PSO", "SGD", 0.8),
                                       score_row("CGO", "KNN", 0.7)};
    CHECK_ERROR_CODE(rank_rows({missing}, RankOptions{}), ErrorCode::InsufficientBlocks);
    RankOptions one_metric;
    one_metric.metrics = {"accuracy"};
    std::vector<io::ResultRow> one_block{score_row("CGO", "SGD", 0.9), score_row("PSO", "SGD", 0.8)};
    CHECK_ERROR_CODE(rank_rows({one_block}, one_metric), ErrorCode::InsufficientBlocks);
}

TEST_CASE("rank files round trip") {
    const auto dir = test::scratch_dir("exp_rank");
    std::vector<io::ResultRow> rows;
    for (const char* clf : {"SGD", "KNN"}) {
        rows.push_back(score_row("CGO", clf, 0.9));
        rows.push_back(score_row("HGS", clf, 0.5));
    }
    io::write_results(rows, dir / "r.csv", {});
    const auto summary = cmd_rank({dir / "r.csv"}, RankOptions{});
    write_rank(summary, dir / "rank.csv", io::ResultFormat::Csv);
    const auto text = io::read_text(dir / "rank.csv");
    CHECK(text.starts_with("optimizer,mean_rank\nCGO,1\nHGS,2\n"));
    write_rank(summary, dir / "rank.json", io::ResultFormat::Json);
    const auto doc = nlohmann::json::parse(io::read_text(dir / "rank.json"));
    CHECK(doc.contains("statistic"));
}

TEST_CASE("synth writes four files and a manifest that parses back") {
    const auto dir = test::scratch_dir("exp_synth");
    io::SyntheticSpec spec;
    spec.seed = 21;
    spec.n_noise = 6;
    const auto out = cmd_synth(spec, dir / "toy");
    for (const auto& p : {out.train, out.test, out.truth, out.manifest}) {
        CHECK(fs::exists(p));
    }
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 4);
    const auto back = read_manifest(out.manifest);
    CHECK(back.seed == 21);
    CHECK(back.n_noise == 6);
    CHECK(back.n_informative == spec.n_informative);
    CHECK(back.class_separation == spec.class_separation);

    const auto truth = io::read_text(out.truth);
    const auto second_line = truth.substr(truth.find('\n') + 1);
    CHECK(std::count(second_line.begin(), second_line.end(), '1') == 5);

    const auto data = io::load_dataset(out.train, out.test);
    CHECK(data.dim() == 11);

    spec.seed = 22;
    const auto other = cmd_synth(spec, dir / "other");
    CHECK(io::read_text(other.train) != io::read_text(out.train));
}
