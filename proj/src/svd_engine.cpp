#include "ttad/svd_engine.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "ttad/errors.hpp"

namespace ttad {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw ConfigError("tau must lie in [0, 1], got " + std::to_string(tau));
}

} // namespace

TruncationPolicy TruncationPolicy::uniform(double tau) {
    check_tau(tau);
    return TruncationPolicy(tau);
}

TruncationPolicy TruncationPolicy::per_step(std::vector<double> taus) {
    if (taus.empty())
        throw ConfigError("per-step tau list must not be empty");
    for (double t : taus)
        check_tau(t);
    return TruncationPolicy(std::move(taus));
}

double TruncationPolicy::tau_for_step(std::size_t step) const {
    if (step < 1)
        throw ConfigError("SVD steps are numbered from 1");
    if (is_uniform())
        return uniform_tau();
    const auto &list = step_taus();
    if (step > list.size())
        throw ConfigError("tau list has " + std::to_string(list.size()) +
                          " entries but step " + std::to_string(step) + " was requested");
    return list[step - 1];
}

double policy_tau(const TruncationPolicy &policy, std::size_t step) {
    return policy.tau_for_step(step);
}

TruncatedSvd truncated_svd(const Eigen::Ref<const Eigen::MatrixXd> &m, double tau) {
    check_tau(tau);
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInputError("truncated SVD of an all-zero matrix");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw DegenerateInputError("SVD did not converge");

    const Eigen::VectorXd &sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double cut = tau * sigma_max;
    const double floor = kSingularFloor * sigma_max;

    Eigen::Index rank = 1;
    while (rank < sigma.size() && sigma(rank) > cut && sigma(rank) > floor)
        ++rank;

    TruncatedSvd out{svd.matrixU().leftCols(rank), sigma.head(rank),
                     svd.matrixV().leftCols(rank).transpose()};

    for (Eigen::Index k = 0; k < rank; ++k) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < out.u.rows(); ++i) {
            const double a = std::abs(out.u(i, k));
            // Near-ties resolve to the first index so the choice is reproducible.
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                pivot = i;
            }
        }
        if (out.u(pivot, k) < 0.0) {
            out.u.col(k) *= -1.0;
            out.v.row(k) *= -1.0;
        }
    }
    return out;
}

} // namespace ttad
