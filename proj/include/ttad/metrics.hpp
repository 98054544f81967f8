#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ttad {

/// Scores within this (relative) spread are treated as one tie group.
inline constexpr double kTieTolerance = 1e-10;

struct ConfusionMatrix {
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tp = 0;

    std::size_t total() const noexcept { return tn + fp + fn + tp; }
    bool operator==(const ConfusionMatrix &) const = default;
};

/**
 * ROC evaluation of decision values d (larger = more normal) against binary labels
 * (1 = anomalous, the positive class). The anomaly score is -d.
 *
 * `threshold` is on the d scale: a row is predicted anomalous iff d <= threshold.
 * `degenerate` marks an all-tied score vector; its AUROC is 0.5.
 */
struct RocReport {
    std::vector<std::pair<double, double>> points; // (fpr, tpr)
    double auroc = 0.5;
    double threshold = 0.0;
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    bool degenerate = false;
};

RocReport roc_auroc(std::span<const double> scores, std::span<const int> labels);

/// True when max - min of scores is within kTieTolerance * max(1, max |score|).
bool all_tied(std::span<const double> scores);

} // namespace ttad
