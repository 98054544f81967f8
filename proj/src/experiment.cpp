#include "ttad/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ttad/errors.hpp"
#include "ttad/preprocessing.hpp"

namespace ttad {

using nlohmann::json;

// ---------------------------------------------------------------------------
// CSV input

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::string where(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

bool parse_double(std::string_view s, double &out) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_label(std::string_view s, int &out) {
    double v = 0.0;
    if (!parse_double(s, v) || v != std::floor(v) || std::abs(v) > 1e9)
        return false;
    out = static_cast<int>(v);
    return true;
}

bool is_index(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

} // namespace

CsvTable load_csv(const std::filesystem::path &path, bool has_header,
                  const std::optional<std::string> &label_column) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> width;
    std::optional<std::size_t> label_idx;
    std::vector<std::string> header;
    std::vector<double> values;
    std::vector<int> labels;
    std::size_t rows = 0;

    auto resolve_label = [&](const std::vector<std::string_view> &names) {
        if (!label_column)
            return;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == *label_column)
                label_idx = i;
        if (!label_idx && is_index(*label_column))
            label_idx = std::stoul(*label_column);
        if (!label_idx || *label_idx >= names.size())
            throw ParseError("label column '" + *label_column + "' not found in '" +
                             path.string() + "'");
    };

    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(line);
        if (header_pending) {
            header_pending = false;
            width = fields.size();
            resolve_label(fields);
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (!label_idx || i != *label_idx)
                    header.emplace_back(fields[i]);
            continue;
        }
        if (!width) {
            width = fields.size();
            resolve_label(fields);
        }
        if (fields.size() != *width)
            throw ParseError("ragged row at line " + std::to_string(line_no) + ": expected " +
                             std::to_string(*width) + " fields, found " +
                             std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (label_idx && c == *label_idx) {
                int label = 0;
                if (!parse_label(fields[c], label))
                    throw ParseError("non-integer label '" + std::string(fields[c]) + "' at " +
                                     where(line_no, c + 1));
                labels.push_back(label);
                continue;
            }
            double v = 0.0;
            if (!parse_double(fields[c], v))
                throw ParseError("non-numeric value '" + std::string(fields[c]) + "' at " +
                                 where(line_no, c + 1));
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0)
        throw ParseError("no data rows in '" + path.string() + "'");
    const std::size_t cols = *width - (label_idx ? 1 : 0);
    if (cols == 0)
        throw ParseError("no feature columns in '" + path.string() + "'");
    CsvTable table{DataMatrix(rows, cols, std::move(values)), std::nullopt, std::move(header)};
    if (label_idx)
        table.labels = std::move(labels);
    return table;
}

std::vector<int> load_label_file(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<int> out;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty())
            continue;
        int label = 0;
        if (!parse_label(t, label))
            throw ParseError("non-integer label '" + std::string(t) + "' at " + where(line_no, 1));
        out.push_back(label);
    }
    if (out.empty())
        throw ParseError("no labels in '" + path.string() + "'");
    return out;
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<double> default_tau_grid() {
    constexpr std::size_t points = 50;
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = 0.5 * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config: return 1;
    case ErrorKind::Degenerate:
    case ErrorKind::Structural: return 3;
    default: return 2;
    }
}

namespace {

void validate_spec(const ExperimentSpec &spec) {
    if (spec.step_taus) {
        if (!spec.taus.empty())
            throw ConfigError("give either a tau sweep or a per-step tau list, not both");
        (void)TruncationPolicy::per_step(*spec.step_taus);
    } else if (spec.taus.empty()) {
        throw ConfigError("tau list is empty");
    }
    for (double t : spec.taus)
        (void)TruncationPolicy::uniform(t);
    (void)FactorShape(spec.shape);
    if (spec.n_normal.has_value() != spec.n_anomalous.has_value())
        throw ConfigError("--n-normal and --n-anomalous must be given together");
    if (spec.n_normal && !spec.normal_class)
        throw ConfigError("sampling needs --normal-class");
    if (spec.n_normal && !spec.labels)
        throw ConfigError("sampling needs --labels");
    if (spec.mode && is_local(spec.method))
        throw ConfigError("--mode applies to the global methods only");
}

DatasetFingerprint fingerprint(const std::filesystem::path &path, const DataMatrix &m) {
    return DatasetFingerprint{path.string(), m.rows(), m.cols(), fnv1a_hex(read_file(path))};
}

std::vector<int> binarize(const std::vector<int> &labels, const std::optional<int> &normal_class) {
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (normal_class) {
            out[i] = labels[i] == *normal_class ? 0 : 1;
        } else {
            if (labels[i] != 0 && labels[i] != 1)
                throw ConfigError("labels are not binary; give --normal-class");
            out[i] = labels[i];
        }
    }
    return out;
}

std::vector<std::string> first_line_fields(const std::filesystem::path &path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> out;
    for (auto f : split_fields(line))
        out.emplace_back(f);
    return out;
}

std::string format_tau(double tau) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), tau);
    return std::string(buf.data(), end);
}

} // namespace

SweepReport run_experiment(const ExperimentSpec &spec) {
    validate_spec(spec);
    const FactorShape shape(spec.shape);

    // Labels: a column of the input, or a separate file.
    std::optional<std::string> label_column;
    std::optional<std::vector<int>> raw_labels;
    if (spec.labels) {
        const std::filesystem::path candidate(*spec.labels);
        if (std::filesystem::is_regular_file(candidate))
            raw_labels = load_label_file(candidate);
        else
            label_column = spec.labels;
    }
    CsvTable input = load_csv(spec.input, spec.has_header, label_column);
    if (input.labels)
        raw_labels = std::move(input.labels);
    if (raw_labels && raw_labels->size() != input.data.rows())
        throw DimensionError("label count " + std::to_string(raw_labels->size()) +
                             " does not match " + std::to_string(input.data.rows()) + " rows");
    if (shape.product() < input.data.cols())
        throw ConfigError("shape product " + std::to_string(shape.product()) +
                          " is smaller than the feature count " +
                          std::to_string(input.data.cols()));

    SweepReport report;
    report.spec = spec;
    report.dataset = fingerprint(spec.input, input.data);

    std::optional<DataMatrix> train;
    if (spec.train) {
        // The training file may carry the same label column; it is dropped when present.
        std::optional<std::string> train_label;
        if (label_column && spec.has_header) {
            const auto names = first_line_fields(*spec.train);
            if (std::find(names.begin(), names.end(), *label_column) != names.end())
                train_label = label_column;
        }
        CsvTable t = load_csv(*spec.train, spec.has_header, train_label);
        if (t.data.cols() != input.data.cols())
            throw DimensionError("training data has " + std::to_string(t.data.cols()) +
                                 " features, input has " + std::to_string(input.data.cols()));
        report.train_dataset = fingerprint(*spec.train, t.data);
        train = std::move(t.data);
    }

    DataMatrix data = std::move(input.data);
    if (spec.scaler && spec.scaler_fit == ScalerFit::Dataset) {
        const ScalerParams params =
            fit_scaler(train ? DataMatrix::stack(*train, data) : data);
        data = apply_scaler(data, params);
        if (train)
            train = apply_scaler(*train, params);
    }

    // Rows to score.
    std::vector<std::size_t> rows;
    std::optional<std::vector<int>> eval_labels;
    DataMatrix evaluated = data;
    if (spec.n_normal) {
        ExperimentSample sample = sample_experiment(data, *raw_labels, *spec.normal_class,
                                                    *spec.n_normal, *spec.n_anomalous, spec.seed);
        evaluated = std::move(sample.data);
        rows = std::move(sample.source_rows);
        eval_labels = std::move(sample.labels);
    } else {
        rows.resize(data.rows());
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = i;
        if (raw_labels)
            eval_labels = binarize(*raw_labels, spec.normal_class);
    }

    DetectorConfig cfg{spec.method, shape, TruncationPolicy::uniform(0.0),
                       spec.scaler && spec.scaler_fit == ScalerFit::Sample,
                       spec.mode.value_or(train ? Mode::Supervised : Mode::Unsupervised)};
    report.mode = cfg.mode;

    std::optional<Vector> basis_row;
    if (is_local(spec.method)) {
        if (train) {
            basis_row = train->values().row(0).transpose();
            report.basis_source = "train:0";
        } else {
            if (!raw_labels || !spec.normal_class)
                throw ConfigError("local methods need --train, or --labels with --normal-class "
                                  "to draw a held-out normal row");
            std::vector<std::size_t> pool;
            for (std::size_t r = 0; r < raw_labels->size(); ++r)
                if ((*raw_labels)[r] == *spec.normal_class &&
                    std::find(rows.begin(), rows.end(), r) == rows.end())
                    pool.push_back(r);
            if (pool.empty())
                throw SamplingError("no normal row left outside the sample for the local basis");
            const std::size_t pick =
                pool[sample_without_replacement(pool.size(), 1, spec.seed ^ 0x5851f42d4c957f2dULL)[0]];
            basis_row = data.values().row(static_cast<Eigen::Index>(pick)).transpose();
            report.basis_source = "input:" + std::to_string(pick);
        }
    }

    report.evaluated_rows = evaluated.rows();
    report.evaluated_source_rows = rows;
    report.evaluated_labels = eval_labels;

    struct Run {
        std::optional<double> tau;
        TruncationPolicy policy;
    };
    std::vector<Run> runs;
    if (spec.step_taus)
        runs.push_back({std::nullopt, TruncationPolicy::per_step(*spec.step_taus)});
    for (double tau : spec.taus)
        runs.push_back({tau, TruncationPolicy::uniform(tau)});

    for (const Run &run : runs) {
        cfg.policy = run.policy;
        const auto start = std::chrono::steady_clock::now();
        SweepRecord rec;
        rec.tau = run.tau;
        if (!run.tau)
            rec.step_taus = spec.step_taus;
        try {
            ScoreVector scores;
            switch (spec.method) {
            case Method::ACG: scores = acg_score(evaluated, train, cfg); break;
            case Method::GCG: scores = gcg_score(evaluated, train, cfg); break;
            case Method::ACL: scores = acl_score(evaluated, *basis_row, cfg); break;
            case Method::GCL: scores = gcl_score(evaluated, evaluated, *basis_row, cfg); break;
            }
            if (eval_labels)
                rec.roc = roc_auroc(scores.values, *eval_labels);
            rec.flagged_rows = scores.flagged_count();
            if (spec.emit_scores) {
                rec.scores = scores.values;
                rec.flagged = scores.flagged;
            }
        } catch (const Error &e) {
            const std::string at = run.tau ? "tau=" + format_tau(*run.tau) : "per-step taus";
            throw Error(e.kind(), at + ": " + e.what());
        }
        rec.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        report.records.push_back(std::move(rec));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reports

std::string spec_command_line(const ExperimentSpec &spec) {
    std::ostringstream cmd;
    cmd << "ttad --input " << spec.input.string();
    if (!spec.has_header)
        cmd << " --no-header";
    if (spec.labels)
        cmd << " --labels " << *spec.labels;
    if (spec.train)
        cmd << " --train " << spec.train->string();
    cmd << " --method " << to_string(spec.method);
    if (spec.mode)
        cmd << " --mode " << to_string(*spec.mode);
    cmd << " --shape ";
    for (std::size_t i = 0; i < spec.shape.size(); ++i)
        cmd << (i ? "," : "") << spec.shape[i];
    if (!spec.taus.empty()) {
        cmd << " --tau ";
        for (std::size_t i = 0; i < spec.taus.size(); ++i)
            cmd << (i ? "," : "") << format_tau(spec.taus[i]);
    }
    if (spec.step_taus) {
        cmd << " --tau-steps ";
        for (std::size_t i = 0; i < spec.step_taus->size(); ++i)
            cmd << (i ? "," : "") << format_tau((*spec.step_taus)[i]);
    }
    cmd << " --scaler " << (spec.scaler ? "on" : "off");
    cmd << " --scaler-fit " << (spec.scaler_fit == ScalerFit::Dataset ? "dataset" : "sample");
    if (spec.normal_class)
        cmd << " --normal-class " << *spec.normal_class;
    if (spec.n_normal)
        cmd << " --n-normal " << *spec.n_normal << " --n-anomalous " << *spec.n_anomalous;
    cmd << " --seed " << spec.seed;
    if (spec.emit_scores)
        cmd << " --emit-scores";
    return cmd.str();
}

namespace {

template <typename T> json optional_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T> std::optional<T> json_optional(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

json fingerprint_json(const DatasetFingerprint &f) {
    return json{{"path", f.path}, {"rows", f.rows}, {"cols", f.cols}, {"checksum", f.checksum}};
}

DatasetFingerprint fingerprint_from(const json &j) {
    return DatasetFingerprint{j.at("path").get<std::string>(), j.at("rows").get<std::size_t>(),
                              j.at("cols").get<std::size_t>(), j.at("checksum").get<std::string>()};
}

json spec_json(const ExperimentSpec &s) {
    json j;
    j["input"] = s.input.string();
    j["has_header"] = s.has_header;
    j["labels"] = optional_json(s.labels);
    j["train"] = s.train ? json(s.train->string()) : json(nullptr);
    j["method"] = to_string(s.method);
    j["mode"] = s.mode ? json(to_string(*s.mode)) : json(nullptr);
    j["shape"] = s.shape;
    j["taus"] = s.taus;
    j["step_taus"] = optional_json(s.step_taus);
    j["scaler"] = s.scaler;
    j["scaler_fit"] = s.scaler_fit == ScalerFit::Dataset ? "dataset" : "sample";
    j["normal_class"] = optional_json(s.normal_class);
    j["n_normal"] = optional_json(s.n_normal);
    j["n_anomalous"] = optional_json(s.n_anomalous);
    j["seed"] = s.seed;
    j["emit_scores"] = s.emit_scores;
    return j;
}

ExperimentSpec spec_from(const json &j) {
    ExperimentSpec s;
    s.input = j.at("input").get<std::string>();
    s.has_header = j.at("has_header").get<bool>();
    s.labels = json_optional<std::string>(j, "labels");
    if (auto t = json_optional<std::string>(j, "train"))
        s.train = *t;
    s.method = parse_method(j.at("method").get<std::string>());
    if (auto m = json_optional<std::string>(j, "mode"))
        s.mode = parse_mode(*m);
    s.shape = j.at("shape").get<std::vector<std::size_t>>();
    s.taus = j.at("taus").get<std::vector<double>>();
    s.step_taus = json_optional<std::vector<double>>(j, "step_taus");
    s.scaler = j.at("scaler").get<bool>();
    s.scaler_fit = j.at("scaler_fit").get<std::string>() == "sample" ? ScalerFit::Sample
                                                                     : ScalerFit::Dataset;
    s.normal_class = json_optional<int>(j, "normal_class");
    s.n_normal = json_optional<std::size_t>(j, "n_normal");
    s.n_anomalous = json_optional<std::size_t>(j, "n_anomalous");
    s.seed = j.at("seed").get<std::uint64_t>();
    s.emit_scores = j.at("emit_scores").get<bool>();
    return s;
}

json record_json(const SweepRecord &r) {
    json j;
    j["tau"] = optional_json(r.tau);
    j["step_taus"] = optional_json(r.step_taus);
    if (r.roc) {
        const RocReport &roc = *r.roc;
        j["auroc"] = roc.auroc;
        j["threshold"] = roc.threshold;
        j["accuracy"] = roc.accuracy;
        j["degenerate"] = roc.degenerate;
        j["confusion"] = {{"tn", roc.confusion.tn},
                          {"fp", roc.confusion.fp},
                          {"fn", roc.confusion.fn},
                          {"tp", roc.confusion.tp}};
        json pts = json::array();
        for (const auto &[fpr, tpr] : roc.points)
            pts.push_back({fpr, tpr});
        j["roc"] = std::move(pts);
    } else {
        j["auroc"] = nullptr;
    }
    j["flagged_rows"] = r.flagged_rows;
    if (r.scores) {
        j["scores"] = *r.scores;
        j["flagged"] = *r.flagged;
    }
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

SweepRecord record_from(const json &j) {
    SweepRecord r;
    r.tau = json_optional<double>(j, "tau");
    r.step_taus = json_optional<std::vector<double>>(j, "step_taus");
    if (!j.at("auroc").is_null()) {
        RocReport roc;
        roc.auroc = j.at("auroc").get<double>();
        roc.threshold = j.at("threshold").get<double>();
        roc.accuracy = j.at("accuracy").get<double>();
        roc.degenerate = j.at("degenerate").get<bool>();
        const json &c = j.at("confusion");
        roc.confusion = ConfusionMatrix{c.at("tn").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                                        c.at("fn").get<std::size_t>(), c.at("tp").get<std::size_t>()};
        for (const json &p : j.at("roc"))
            roc.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        r.roc = std::move(roc);
    }
    r.flagged_rows = j.at("flagged_rows").get<std::size_t>();
    r.scores = json_optional<std::vector<double>>(j, "scores");
    r.flagged = json_optional<std::vector<bool>>(j, "flagged");
    r.runtime_ms = j.at("runtime_ms").get<double>();
    return r;
}

json metadata_json(const SweepReport &report) {
    json meta;
    meta["library_version"] = report.library_version;
    meta["command"] = spec_command_line(report.spec);
    meta["spec"] = spec_json(report.spec);
    meta["dataset"] = fingerprint_json(report.dataset);
    meta["train_dataset"] =
        report.train_dataset ? fingerprint_json(*report.train_dataset) : json(nullptr);
    meta["mode"] = to_string(report.mode);
    meta["evaluated_rows"] = report.evaluated_rows;
    meta["basis_source"] = optional_json(report.basis_source);
    return meta;
}

} // namespace

json report_to_json(const SweepReport &report) {
    json doc;
    doc["format"] = "ttad-sweep-report";
    doc["format_version"] = 1;
    doc["metadata"] = metadata_json(report);
    doc["evaluated_source_rows"] = report.evaluated_source_rows;
    doc["evaluated_labels"] = optional_json(report.evaluated_labels);
    json records = json::array();
    for (const auto &r : report.records)
        records.push_back(record_json(r));
    doc["records"] = std::move(records);
    return doc;
}

SweepReport report_from_json(const json &doc) {
    if (doc.value("format", "") != "ttad-sweep-report")
        throw ParseError("not a sweep report document");
    const json &meta = doc.at("metadata");
    SweepReport r;
    r.spec = spec_from(meta.at("spec"));
    r.dataset = fingerprint_from(meta.at("dataset"));
    if (!meta.at("train_dataset").is_null())
        r.train_dataset = fingerprint_from(meta.at("train_dataset"));
    r.library_version = meta.at("library_version").get<std::string>();
    r.mode = parse_mode(meta.at("mode").get<std::string>());
    r.evaluated_rows = meta.at("evaluated_rows").get<std::size_t>();
    r.basis_source = json_optional<std::string>(meta, "basis_source");
    r.evaluated_source_rows = doc.at("evaluated_source_rows").get<std::vector<std::size_t>>();
    r.evaluated_labels = json_optional<std::vector<int>>(doc, "evaluated_labels");
    for (const json &rec : doc.at("records"))
        r.records.push_back(record_from(rec));
    return r;
}

void write_report(std::ostream &out, const SweepReport &report, ReportFormat format) {
    if (format == ReportFormat::Structured) {
        out << report_to_json(report).dump(2) << '\n';
    } else {
        // Metadata as comment lines, then one row per record.
        const json meta = metadata_json(report);
        out << "# ttad sweep report\n";
        for (const char *key : {"library_version", "command", "mode", "evaluated_rows"})
            out << "# " << key << ": "
                << (meta.at(key).is_string() ? meta.at(key).get<std::string>() : meta.at(key).dump())
                << '\n';
        out << "# dataset: " << meta.at("dataset").dump() << '\n';
        if (report.train_dataset)
            out << "# train_dataset: " << meta.at("train_dataset").dump() << '\n';
        if (report.basis_source)
            out << "# basis_source: " << *report.basis_source << '\n';
        out << "tau,auroc,threshold,accuracy,tn,fp,fn,tp\n";
        std::array<char, 32> buf{};
        auto num = [&](double v) {
            auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            return std::string(buf.data(), end);
        };
        for (const auto &rec : report.records) {
            if (rec.tau) {
                out << num(*rec.tau);
            } else {
                out << '"';
                for (std::size_t i = 0; i < rec.step_taus->size(); ++i)
                    out << (i ? ";" : "") << num((*rec.step_taus)[i]);
                out << '"';
            }
            if (rec.roc) {
                const RocReport &roc = *rec.roc;
                out << ',' << num(roc.auroc) << ',' << num(roc.threshold) << ','
                    << num(roc.accuracy) << ',' << roc.confusion.tn << ',' << roc.confusion.fp
                    << ',' << roc.confusion.fn << ',' << roc.confusion.tp;
            } else {
                out << ",,,,,,,";
            }
            out << '\n';
        }
    }
    if (!out)
        throw IoError("failed writing report");
}

void emit_report(const SweepReport &report, ReportFormat format,
                 const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_report(out, report, format);
}

} // namespace ttad
