// ttad: run a tensor-train anomaly-detection tau sweep over a CSV dataset.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ttad/errors.hpp"
#include "ttad/experiment.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Tensor-train compression anomaly detector: tau sweeps with ROC reports"};
    app.set_version_flag("--version", ttad::kLibraryVersion);

    std::string input, labels, train, method = "acg", mode, scaler = "off", scaler_fit = "dataset";
    std::string out, format = "structured";
    std::vector<std::size_t> shape;
    std::vector<double> taus, step_taus;
    int normal_class = 0;
    std::size_t n_normal = 0, n_anomalous = 0;
    std::uint64_t seed = 0;
    bool emit_scores = false, no_header = false;

    app.add_option("--input", input, "CSV dataset, one data point per row")->required();
    auto *labels_opt = app.add_option("--labels", labels,
                                      "label column of the input (name or 0-based index) or a "
                                      "file with one integer label per line");
    auto *train_opt = app.add_option("--train", train, "CSV of known-normal training rows");
    app.add_option("--method", method, "detector")
        ->check(CLI::IsMember({"acg", "gcg", "acl", "gcl"}));
    auto *mode_opt = app.add_option("--mode", mode, "global methods: role of --train rows")
                         ->check(CLI::IsMember({"unsupervised", "semi_supervised", "supervised"}));
    app.add_option("--shape", shape, "comma-separated feature factors, e.g. 2,2,2,2,2,2")
        ->required()
        ->delimiter(',');
    auto *tau_opt = app.add_option("--tau", taus,
                                   "compression factor(s); repeatable or comma list "
                                   "(default: 50 points in [0, 0.5])")
                        ->delimiter(',');
    auto *steps_opt = app.add_option("--tau-steps", step_taus,
                                     "one tau per SVD step (single record instead of a sweep)")
                          ->delimiter(',')
                          ->excludes(tau_opt);
    app.add_option("--scaler", scaler, "standard scaler")->check(CLI::IsMember({"on", "off"}));
    app.add_option("--scaler-fit", scaler_fit,
                   "rows the scaler is fitted on: the whole loaded dataset or the scored sample")
        ->check(CLI::IsMember({"dataset", "sample"}));
    auto *normal_opt = app.add_option("--normal-class", normal_class, "label of the normal class");
    auto *nn_opt = app.add_option("--n-normal", n_normal, "sampled normal rows");
    auto *na_opt = app.add_option("--n-anomalous", n_anomalous, "sampled anomalous rows");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--out", out, "output file (default: stdout)");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"structured", "tabular"}));
    app.add_flag("--emit-scores", emit_scores, "include per-row decision values");
    app.add_flag("--no-header", no_header, "the CSV files have no header row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    ttad::ExperimentSpec spec;
    spec.input = input;
    spec.has_header = !no_header;
    if (*labels_opt)
        spec.labels = labels;
    if (*train_opt)
        spec.train = train;
    spec.shape = shape;
    if (*steps_opt)
        spec.step_taus = step_taus;
    else
        spec.taus = *tau_opt ? taus : ttad::default_tau_grid();
    spec.scaler = scaler == "on";
    spec.scaler_fit = scaler_fit == "sample" ? ttad::ScalerFit::Sample : ttad::ScalerFit::Dataset;
    if (*normal_opt)
        spec.normal_class = normal_class;
    if (*nn_opt)
        spec.n_normal = n_normal;
    if (*na_opt)
        spec.n_anomalous = n_anomalous;
    spec.seed = seed;
    spec.emit_scores = emit_scores;

    try {
        spec.method = ttad::parse_method(method);
        if (*mode_opt)
            spec.mode = ttad::parse_mode(mode);
        const ttad::SweepReport report = ttad::run_experiment(spec);
        const auto fmt =
            format == "tabular" ? ttad::ReportFormat::Tabular : ttad::ReportFormat::Structured;
        if (out.empty())
            ttad::write_report(std::cout, report, fmt);
        else
            ttad::emit_report(report, fmt, out);
    } catch (const ttad::Error &e) {
        std::cerr << "ttad: " << e.what() << '\n';
        return ttad::exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "ttad: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
