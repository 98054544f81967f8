#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace ttad {

/// Relative floor below which singular values count as zero, even at tau = 0.
inline constexpr double kSingularFloor = 1e-14;

/**
 * Result of a truncated SVD: m ~= u * diag(singulars) * v.
 *
 * u is p x r with orthonormal columns, v is r x q with orthonormal rows and
 * singulars are strictly positive and non-increasing. Signs are fixed so the
 * largest-magnitude entry of every column of u is positive (first such entry on ties).
 */
struct TruncatedSvd {
    Eigen::MatrixXd u;
    Eigen::VectorXd singulars;
    Eigen::MatrixXd v;

    std::size_t rank() const noexcept { return static_cast<std::size_t>(singulars.size()); }
    Eigen::MatrixXd reconstruct() const { return u * singulars.asDiagonal() * v; }
};

/// Either one tau for every SVD step, or one tau per step (1-based).
class TruncationPolicy {
public:
    static TruncationPolicy uniform(double tau);
    static TruncationPolicy per_step(std::vector<double> taus);

    bool is_uniform() const noexcept { return std::holds_alternative<double>(taus_); }
    const std::vector<double> &step_taus() const { return std::get<std::vector<double>>(taus_); }
    double uniform_tau() const { return std::get<double>(taus_); }

    /// tau for the SVD that produces core `step` (1-based). Throws ConfigError past the list.
    double tau_for_step(std::size_t step) const;

    bool operator==(const TruncationPolicy &) const = default;

private:
    explicit TruncationPolicy(std::variant<double, std::vector<double>> taus)
        : taus_(std::move(taus)) {}

    std::variant<double, std::vector<double>> taus_;
};

/// Free-function spelling of TruncationPolicy::tau_for_step.
double policy_tau(const TruncationPolicy &policy, std::size_t step);

/**
 * Keeps the singular values with sigma_k > tau * sigma_max (strict) and above
 * kSingularFloor * sigma_max; sigma_max itself is always kept.
 *
 * Throws DegenerateInputError for an all-zero matrix and ConfigError for tau outside [0, 1].
 */
TruncatedSvd truncated_svd(const Eigen::Ref<const Eigen::MatrixXd> &m, double tau);

} // namespace ttad
