#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ttad/tensor_core.hpp"

namespace ttad {

/// Per-column standard-scaler parameters. Zero-variance columns store std = 1 and are flagged.
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<bool> zero_variance;
};

/// Column means and population standard deviations.
ScalerParams fit_scaler(const DataMatrix &m);

/// (value - mean) / std per column. Throws DimensionError on width mismatch.
DataMatrix apply_scaler(const DataMatrix &m, const ScalerParams &p);

DataMatrix invert_scaler(const DataMatrix &m, const ScalerParams &p);

/// Rows and binary labels (1 = anomalous, 0 = normal) drawn for one experiment.
struct ExperimentSample {
    DataMatrix data;
    std::vector<int> labels;
    /// Source row of each sampled row, in output order.
    std::vector<std::size_t> source_rows;
};

/**
 * Seeded uniform sampling without replacement: `n_normal` rows whose label equals
 * `normal_class`, then `n_anomalous` rows from all other classes pooled.
 * Normal rows come first in the output. Throws SamplingError on shortfall.
 */
ExperimentSample sample_experiment(const DataMatrix &data, std::span<const int> labels,
                                   int normal_class, std::size_t n_normal,
                                   std::size_t n_anomalous, std::uint64_t seed);

/// k distinct indices from [0, population), reproducible across platforms for a seed.
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t k,
                                                    std::uint64_t seed);

} // namespace ttad
