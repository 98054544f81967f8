#include "ttad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ttad/errors.hpp"

namespace ttad {

bool all_tied(std::span<const double> scores) {
    if (scores.empty())
        return true;
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
    return *hi - *lo <= kTieTolerance * scale;
}

RocReport roc_auroc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw EvaluationError("got " + std::to_string(scores.size()) + " scores for " +
                              std::to_string(labels.size()) + " labels");
    std::size_t positives = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw EvaluationError("labels must be 0 (normal) or 1 (anomalous)");
        if (!std::isfinite(scores[i]))
            throw EvaluationError("non-finite score at row " + std::to_string(i));
        positives += static_cast<std::size_t>(labels[i]);
    }
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0 || negatives == 0)
        throw EvaluationError("ROC needs both normal and anomalous rows");

    RocReport report;
    report.degenerate = all_tied(scores);

    // Ascending d is descending anomaly score -d: flag the least normal rows first.
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    const double p = static_cast<double>(positives);
    const double n = static_cast<double>(negatives);
    report.points.emplace_back(0.0, 0.0);

    std::size_t tp = 0, fp = 0;
    double area = 0.0; // in units of (pairs), normalized at the end
    double best_accuracy = -1.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const double group_score = scores[order[i]];
        if (report.degenerate) {
            j = order.size();
        } else {
            while (j < order.size() && scores[order[j]] == group_score)
                ++j;
        }
        const std::size_t tp_prev = tp, fp_prev = fp;
        for (std::size_t k = i; k < j; ++k)
            (labels[order[k]] == 1 ? tp : fp) += 1;
        area += static_cast<double>(fp - fp_prev) * static_cast<double>(tp + tp_prev) / 2.0;
        report.points.emplace_back(static_cast<double>(fp) / n, static_cast<double>(tp) / p);

        const double threshold = scores[order[j - 1]];
        const double accuracy =
            static_cast<double>(tp + (negatives - fp)) / static_cast<double>(labels.size());
        if (accuracy > best_accuracy) {
            best_accuracy = accuracy;
            report.threshold = threshold;
            report.accuracy = accuracy;
            report.confusion = ConfusionMatrix{negatives - fp, fp, positives - tp, tp};
        }
        i = j;
    }
    report.auroc = area / (p * n);
    return report;
}

} // namespace ttad
