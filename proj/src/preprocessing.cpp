#include "ttad/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ttad/errors.hpp"

namespace ttad {

ScalerParams fit_scaler(const DataMatrix &m) {
    const auto &v = m.values();
    ScalerParams p;
    p.mean.resize(m.cols());
    p.std.resize(m.cols());
    p.zero_variance.resize(m.cols());
    const double n = static_cast<double>(m.rows());
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        const double mean = v.col(c).sum() / n;
        const double var = (v.col(c).array() - mean).square().sum() / n;
        const double sd = std::sqrt(var);
        p.mean[c] = mean;
        p.zero_variance[c] = !(sd > 0.0);
        p.std[c] = p.zero_variance[c] ? 1.0 : sd;
    }
    return p;
}

namespace {

void check_width(const DataMatrix &m, const ScalerParams &p) {
    if (p.mean.size() != m.cols() || p.std.size() != m.cols())
        throw DimensionError("scaler fitted on " + std::to_string(p.mean.size()) +
                             " columns applied to " + std::to_string(m.cols()));
}

} // namespace

DataMatrix apply_scaler(const DataMatrix &m, const ScalerParams &p) {
    check_width(m, p);
    RowMatrix out = m.values();
    for (Eigen::Index c = 0; c < out.cols(); ++c)
        out.col(c) = (out.col(c).array() - p.mean[c]) / p.std[c];
    return DataMatrix(std::move(out));
}

DataMatrix invert_scaler(const DataMatrix &m, const ScalerParams &p) {
    check_width(m, p);
    RowMatrix out = m.values();
    for (Eigen::Index c = 0; c < out.cols(); ++c)
        out.col(c) = out.col(c).array() * p.std[c] + p.mean[c];
    return DataMatrix(std::move(out));
}

namespace {

// Unbiased draw in [0, n) by rejection; std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries.
std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t excess = (max % n + 1) % n;
    const std::uint64_t limit = max - excess; // accept x <= limit
    std::uint64_t x = rng();
    while (x > limit)
        x = rng();
    return x % n;
}

} // namespace

std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t k,
                                                    std::uint64_t seed) {
    if (k > population)
        throw SamplingError("cannot draw " + std::to_string(k) + " from " +
                            std::to_string(population));
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(population);
    for (std::size_t i = 0; i < population; ++i)
        pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded(rng, population - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

ExperimentSample sample_experiment(const DataMatrix &data, std::span<const int> labels,
                                   int normal_class, std::size_t n_normal,
                                   std::size_t n_anomalous, std::uint64_t seed) {
    if (labels.size() != data.rows())
        throw DimensionError("label count " + std::to_string(labels.size()) +
                             " does not match row count " + std::to_string(data.rows()));
    std::vector<std::size_t> normal, anomalous;
    for (std::size_t r = 0; r < labels.size(); ++r)
        (labels[r] == normal_class ? normal : anomalous).push_back(r);
    if (normal.size() < n_normal || anomalous.size() < n_anomalous)
        throw SamplingError("requested " + std::to_string(n_normal) + " normal and " +
                            std::to_string(n_anomalous) + " anomalous rows but only " +
                            std::to_string(normal.size()) + " normal and " +
                            std::to_string(anomalous.size()) + " anomalous are available");

    // Independent streams for the two pools so changing one size leaves the other fixed.
    auto pick = [](const std::vector<std::size_t> &pool, std::size_t k, std::uint64_t s) {
        std::vector<std::size_t> idx = sample_without_replacement(pool.size(), k, s);
        std::vector<std::size_t> rows;
        rows.reserve(k);
        for (std::size_t i : idx)
            rows.push_back(pool[i]);
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    std::vector<std::size_t> rows = pick(normal, n_normal, seed);
    const std::vector<std::size_t> anom = pick(anomalous, n_anomalous, seed ^ 0x9e3779b97f4a7c15ULL);
    rows.insert(rows.end(), anom.begin(), anom.end());

    if (rows.empty())
        throw SamplingError("empty sample requested");
    RowMatrix out(static_cast<Eigen::Index>(rows.size()), data.values().cols());
    std::vector<int> out_labels;
    out_labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = data.values().row(static_cast<Eigen::Index>(rows[i]));
        out_labels.push_back(i < n_normal ? 0 : 1);
    }
    return ExperimentSample{DataMatrix(std::move(out)), std::move(out_labels), std::move(rows)};
}

} // namespace ttad
