#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ttad/detectors.hpp"
#include "ttad/errors.hpp"
#include "ttad/metrics.hpp"
#include "ttad/tensor_core.hpp"

namespace ttad {

inline constexpr const char *kLibraryVersion = "0.1.0";

struct CsvTable {
    DataMatrix data;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> header; // feature columns only; empty without a header row
};

/**
 * Reads a rectangular numeric CSV. `label_column` is a header name or a 0-based
 * column index; that column is parsed as integers and removed from the features.
 * Errors carry 1-based line and column numbers.
 */
CsvTable load_csv(const std::filesystem::path &path, bool has_header,
                  const std::optional<std::string> &label_column = std::nullopt);

/// One integer label per non-empty line.
std::vector<int> load_label_file(const std::filesystem::path &path);

/// Which rows the standard scaler is fitted on.
enum class ScalerFit { Dataset, Sample };

struct ExperimentSpec {
    std::filesystem::path input;
    bool has_header = true;
    /// Label column of the input (name or index), or a path to a label file.
    std::optional<std::string> labels;
    std::optional<std::filesystem::path> train;
    Method method = Method::ACG;
    std::optional<Mode> mode;
    std::vector<std::size_t> shape;
    /// One record per tau, in this order.
    std::vector<double> taus;
    /// When set, a single record with this per-step policy replaces the tau sweep.
    std::optional<std::vector<double>> step_taus;
    bool scaler = false;
    ScalerFit scaler_fit = ScalerFit::Dataset;
    std::optional<int> normal_class;
    std::optional<std::size_t> n_normal;
    std::optional<std::size_t> n_anomalous;
    std::uint64_t seed = 0;
    bool emit_scores = false;

    bool operator==(const ExperimentSpec &) const = default;
};

/// 50 evenly spaced values in [0, 0.5], endpoints included.
std::vector<double> default_tau_grid();

struct DatasetFingerprint {
    std::string path;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string checksum; // FNV-1a 64 of the file bytes, hex

    bool operator==(const DatasetFingerprint &) const = default;
};

struct SweepRecord {
    std::optional<double> tau;
    std::optional<std::vector<double>> step_taus;
    std::optional<RocReport> roc;
    std::size_t flagged_rows = 0;
    std::optional<std::vector<double>> scores;
    std::optional<std::vector<bool>> flagged;
    double runtime_ms = 0.0;
};

struct SweepReport {
    ExperimentSpec spec;
    DatasetFingerprint dataset;
    std::optional<DatasetFingerprint> train_dataset;
    std::string library_version = kLibraryVersion;
    Mode mode = Mode::Unsupervised;
    std::size_t evaluated_rows = 0;
    /// Input rows that were scored, in score order (0-based).
    std::vector<std::size_t> evaluated_source_rows;
    std::optional<std::vector<int>> evaluated_labels;
    /// Where the local basis vector came from, e.g. "train:0" or "input:412".
    std::optional<std::string> basis_source;
    std::vector<SweepRecord> records;
};

SweepReport run_experiment(const ExperimentSpec &spec);

enum class ReportFormat { Structured, Tabular };

nlohmann::json report_to_json(const SweepReport &report);
SweepReport report_from_json(const nlohmann::json &doc);

void write_report(std::ostream &out, const SweepReport &report, ReportFormat format);
void emit_report(const SweepReport &report, ReportFormat format,
                 const std::filesystem::path &path);

/// Equivalent command line for the spec (used in the report metadata).
std::string spec_command_line(const ExperimentSpec &spec);

/// CLI exit code for an error kind: 1 usage/config, 2 data, 3 numerical degeneracy.
int exit_code_for(ErrorKind kind);

} // namespace ttad
