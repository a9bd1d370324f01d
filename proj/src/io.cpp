#include "cgofs/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "cgofs/error.hpp"
#include "cgofs/rng.hpp"

namespace cgofs::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    if (!out) {
        throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    }
}

// --------------------------------------------------------------- feature CSV

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<long long> parse_integer(std::string_view s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

struct RawTable {
    std::vector<std::string> feature_names;
    Matrix x;
    std::vector<std::string> labels;
};

RawTable read_raw(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    RawTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) {
            continue;
        }
        const auto fields = split_fields(view);
        const std::string where = path.filename().string() + " line " + std::to_string(line_no);
        if (dim == 0 && table.feature_names.empty()) {
            if (fields.size() < 2) {
                throw Error(ErrorCode::ParseError, where + ": header needs at least one feature and a label column");
            }
            for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
                table.feature_names.emplace_back(trim(fields[i]));
            }
            dim = table.feature_names.size();
            table.x = Matrix(0, dim);
            continue;
        }
        if (fields.size() != dim + 1) {
            throw Error(fields.size() < dim + 1 ? ErrorCode::ParseError : ErrorCode::DimMismatch,
                        where + ": expected " + std::to_string(dim + 1) + " fields, found " +
                            std::to_string(fields.size()));
        }
        values.clear();
        for (std::size_t i = 0; i < dim; ++i) {
            const auto v = parse_double(trim(fields[i]));
            if (!v) {
                throw Error(ErrorCode::ParseError,
                            where + ": field " + std::to_string(i + 1) + " is not a number: '" +
                                std::string(trim(fields[i])) + "'");
            }
            if (!std::isfinite(*v)) {
                throw Error(ErrorCode::ParseError, where + ": non-finite feature value");
            }
            values.push_back(*v);
        }
        const auto label = trim(fields[dim]);
        if (label.empty()) {
            throw Error(ErrorCode::ParseError, where + ": empty label");
        }
        table.x.push_row(values);
        table.labels.emplace_back(label);
    }
    if (table.feature_names.empty()) {
        throw Error(ErrorCode::ParseError, path.filename().string() + ": missing header line");
    }
    return table;
}

std::vector<std::string> class_order(const std::vector<std::string>& labels) {
    std::vector<std::string> order;
    bool numeric = true;
    for (const auto& l : labels) {
        if (std::find(order.begin(), order.end(), l) == order.end()) {
            order.push_back(l);
            numeric = numeric && parse_integer(l).has_value();
        }
    }
    if (numeric) {
        std::stable_sort(order.begin(), order.end(),
                         [](const std::string& a, const std::string& b) { return *parse_integer(a) < *parse_integer(b); });
    }
    return order;
}

std::vector<Label> encode(const std::vector<std::string>& labels, const std::vector<std::string>& classes,
                          const fs::path& path) {
    std::map<std::string, Label, std::less<>> index;
    for (Label c = 0; c < classes.size(); ++c) {
        index.emplace(classes[c], c);
    }
    std::vector<Label> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        const auto it = index.find(l);
        if (it == index.end()) {
            throw Error(ErrorCode::UnknownLabel, path.filename().string() + ": label '" + l + "' not present in train");
        }
        out.push_back(it->second);
    }
    return out;
}

} // namespace

FeatureDataset load_csv(const fs::path& path) {
    RawTable raw = read_raw(path);
    auto classes = class_order(raw.labels);
    auto y = encode(raw.labels, classes, path);
    const std::size_t dim = raw.feature_names.size();
    const std::size_t class_count = classes.size();
    return FeatureDataset(Split{std::move(raw.x), std::move(y)}, Split{Matrix(0, dim), {}}, class_count,
                          std::move(classes), std::move(raw.feature_names));
}

FeatureDataset load_dataset(const fs::path& train_path, const fs::path& test_path) {
    RawTable train = read_raw(train_path);
    RawTable test = read_raw(test_path);
    if (test.feature_names.size() != train.feature_names.size()) {
        throw Error(ErrorCode::DimMismatch, "train has " + std::to_string(train.feature_names.size()) +
                                                " features, test has " + std::to_string(test.feature_names.size()));
    }
    auto classes = class_order(train.labels);
    auto train_y = encode(train.labels, classes, train_path);
    auto test_y = encode(test.labels, classes, test_path);
    const std::size_t class_count = classes.size();
    return FeatureDataset(Split{std::move(train.x), std::move(train_y)}, Split{std::move(test.x), std::move(test_y)},
                          class_count, std::move(classes), std::move(train.feature_names));
}

DatasetPaths paired_paths(const fs::path& prefix) {
    return {fs::path(prefix.string() + "_train.csv"), fs::path(prefix.string() + "_test.csv")};
}

void write_csv(const fs::path& path, const Split& split, const std::vector<std::string>& feature_names,
               const std::vector<std::string>& class_names) {
    std::string out;
    for (const auto& name : feature_names) {
        out += name;
        out += ',';
    }
    out += "label\n";
    for (std::size_t i = 0; i < split.size(); ++i) {
        for (double v : split.x.row(i)) {
            out += format_double(v);
            out += ',';
        }
        out += class_names.at(split.y[i]);
        out += '\n';
    }
    write_text(path, out);
}

// ----------------------------------------------------------------- synthetic

void SyntheticSpec::validate() const {
    if (n_informative < 1) {
        throw Error(ErrorCode::InvalidArgument, "synthetic data needs at least one informative feature");
    }
    if (!(class_separation >= 0.0) || !std::isfinite(class_separation)) {
        throw Error(ErrorCode::InvalidArgument, "class separation must be finite and non-negative");
    }
    if (!(noise_scale > 0.0) || !std::isfinite(noise_scale)) {
        throw Error(ErrorCode::InvalidArgument, "noise scale must be positive");
    }
    if (class_count < 2) {
        throw Error(ErrorCode::InvalidArgument, "synthetic data needs at least two classes");
    }
    if (n_samples_per_class < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least two samples per class");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "test fraction must lie in (0, 1)");
    }
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    RandomSource rng(spec.seed);
    const std::size_t dim = spec.n_informative + spec.n_noise;

    // Random placement of the informative columns.
    std::vector<std::size_t> columns(dim);
    std::iota(columns.begin(), columns.end(), std::size_t{0});
    for (std::size_t i = dim; i > 1; --i) {
        std::swap(columns[i - 1], columns[rng.index(i)]);
    }
    std::vector<bool> informative(dim, false);
    std::vector<double> direction(dim, 0.0);
    for (std::size_t i = 0; i < spec.n_informative; ++i) {
        informative[columns[i]] = true;
        direction[columns[i]] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * spec.class_separation;
    }

    const double centre = (static_cast<double>(spec.class_count) - 1.0) / 2.0;
    Split train{Matrix(0, dim), {}};
    Split test{Matrix(0, dim), {}};
    std::vector<double> row(dim);
    std::vector<std::pair<Label, std::vector<double>>> train_rows;
    std::vector<std::pair<Label, std::vector<double>>> test_rows;
    for (Label c = 0; c < spec.class_count; ++c) {
        const double offset = static_cast<double>(c) - centre;
        std::vector<std::vector<double>> samples;
        for (std::size_t s = 0; s < spec.n_samples_per_class; ++s) {
            for (std::size_t j = 0; j < dim; ++j) {
                row[j] = offset * direction[j] + spec.noise_scale * rng.normal();
            }
            samples.push_back(row);
        }
        auto n_test = static_cast<std::size_t>(
            std::lround(spec.test_fraction * static_cast<double>(spec.n_samples_per_class)));
        n_test = std::clamp<std::size_t>(n_test, 1, spec.n_samples_per_class - 1);
        for (std::size_t s = 0; s < samples.size(); ++s) {
            (s < n_test ? test_rows : train_rows).emplace_back(c, std::move(samples[s]));
        }
    }
    const auto shuffle_into = [&](auto& rows, Split& split) {
        for (std::size_t i = rows.size(); i > 1; --i) {
            std::swap(rows[i - 1], rows[rng.index(i)]);
        }
        for (auto& [label, values] : rows) {
            split.x.push_row(values);
            split.y.push_back(label);
        }
    };
    shuffle_into(train_rows, train);
    shuffle_into(test_rows, test);

    std::vector<std::string> classes;
    for (std::size_t c = 0; c < spec.class_count; ++c) {
        classes.push_back(std::to_string(c));
    }
    return {FeatureDataset(std::move(train), std::move(test), spec.class_count, std::move(classes)),
            BinaryMask(std::move(informative))};
}

// ------------------------------------------------------------------- results

ResultFormat parse_format(std::string_view name) {
    if (name == "csv") {
        return ResultFormat::Csv;
    }
    if (name == "json") {
        return ResultFormat::Json;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "' (expected csv or json)");
}

namespace {

constexpr const char* kMetricColumns[] = {"recall", "precision", "f1", "accuracy", "balanced_accuracy"};

json row_to_json(const ResultRow& r, bool timing) {
    json j = {{"optimizer", r.optimizer},
              {"classifier", r.classifier},
              {"aggregate", r.aggregate},
              {r.aggregate ? "repetitions" : "repetition", r.repetition},
              {"recall", r.recall},
              {"precision", r.precision},
              {"f1", r.f1},
              {"accuracy", r.accuracy},
              {"balanced_accuracy", r.balanced_accuracy},
              {"selected_count", r.selected_count},
              {"best_fitness", r.best_fitness},
              {"evaluations", r.evaluations},
              {"seed", r.seed}};
    if (timing) {
        j["fs_wall_time"] = r.fs_wall_time;
        j["classify_wall_time"] = r.classify_wall_time;
    }
    return j;
}

ResultRow row_from_json(const json& j) {
    ResultRow r;
    r.optimizer = j.at("optimizer").get<std::string>();
    r.classifier = j.at("classifier").get<std::string>();
    r.aggregate = j.value("aggregate", false);
    r.repetition = j.at(r.aggregate ? "repetitions" : "repetition").get<std::size_t>();
    r.recall = j.at("recall").get<double>();
    r.precision = j.at("precision").get<double>();
    r.f1 = j.at("f1").get<double>();
    r.accuracy = j.at("accuracy").get<double>();
    r.balanced_accuracy = j.at("balanced_accuracy").get<double>();
    r.selected_count = j.at("selected_count").get<double>();
    r.best_fitness = j.at("best_fitness").get<double>();
    r.evaluations = j.at("evaluations").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.fs_wall_time = j.value("fs_wall_time", 0.0);
    r.classify_wall_time = j.value("classify_wall_time", 0.0);
    return r;
}

} // namespace

void write_results(const std::vector<ResultRow>& rows, const fs::path& path, const WriteOptions& options) {
    if (options.format == ResultFormat::Json) {
        json doc = json::array();
        for (const auto& r : rows) {
            doc.push_back(row_to_json(r, options.include_timing));
        }
        write_text(path, doc.dump(2) + "\n");
        return;
    }

    // A file holds either run rows or aggregate rows; the header says which.
    const bool aggregate = !rows.empty() && rows.front().aggregate;
    std::string out = "optimizer,classifier,";
    out += aggregate ? "repetitions" : "repetition";
    for (const char* col : kMetricColumns) {
        out += ',';
        out += col;
    }
    out += ",selected_count,best_fitness,evaluations,seed";
    if (options.include_timing) {
        out += ",fs_wall_time,classify_wall_time";
    }
    out += '\n';
    for (const auto& r : rows) {
        if (r.aggregate != aggregate) {
            throw Error(ErrorCode::InvalidArgument, "cannot mix run rows and aggregate rows in one CSV file");
        }
        out += r.optimizer + ',' + r.classifier + ',' + std::to_string(r.repetition);
        for (double v : {r.recall, r.precision, r.f1, r.accuracy, r.balanced_accuracy, r.selected_count,
                         r.best_fitness, r.evaluations}) {
            out += ',';
            out += format_double(v);
        }
        out += ',' + std::to_string(r.seed);
        if (options.include_timing) {
            out += ',' + format_double(r.fs_wall_time) + ',' + format_double(r.classify_wall_time);
        }
        out += '\n';
    }
    write_text(path, out);
}

std::vector<ResultRow> read_results(const fs::path& path) {
    const std::string text = read_text(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<ResultRow> rows;
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
        }
        const json& arr = doc.is_object() ? doc.at("rows") : doc;
        for (const auto& j : arr) {
            try {
                rows.push_back(row_from_json(j));
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
            }
        }
        return rows;
    }

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (view.empty()) {
            continue;
        }
        const auto fields = split_fields(view);
        if (header.empty()) {
            for (auto f : fields) {
                header.emplace_back(trim(f));
            }
            continue;
        }
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::ParseError, path.filename().string() + " line " + std::to_string(line_no) +
                                                   ": expected " + std::to_string(header.size()) + " fields");
        }
        ResultRow r;
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string_view name = header[i];
            const std::string_view field = trim(fields[i]);
            const auto number = [&] {
                const auto v = parse_double(field);
                if (!v) {
                    throw Error(ErrorCode::ParseError, path.filename().string() + " line " + std::to_string(line_no) +
                                                           ": column '" + std::string(name) + "' is not numeric");
                }
                return *v;
            };
            if (name == "optimizer") r.optimizer = field;
            else if (name == "classifier") r.classifier = field;
            else if (name == "repetition") r.repetition = static_cast<std::size_t>(number());
            else if (name == "repetitions") { r.repetition = static_cast<std::size_t>(number()); r.aggregate = true; }
            else if (name == "recall") r.recall = number();
            else if (name == "precision") r.precision = number();
            else if (name == "f1") r.f1 = number();
            else if (name == "accuracy") r.accuracy = number();
            else if (name == "balanced_accuracy") r.balanced_accuracy = number();
            else if (name == "selected_count") r.selected_count = number();
            else if (name == "best_fitness") r.best_fitness = number();
            else if (name == "evaluations") r.evaluations = number();
            else if (name == "seed") r.seed = std::stoull(std::string(field));
            else if (name == "fs_wall_time") r.fs_wall_time = number();
            else if (name == "classify_wall_time") r.classify_wall_time = number();
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace cgofs::io
