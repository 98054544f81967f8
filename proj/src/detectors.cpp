#include "ttad/detectors.hpp"

#include <fstream>
#include <string>

#include "ttad/errors.hpp"
#include "ttad/preprocessing.hpp"

namespace ttad {

std::string_view to_string(Method m) {
    switch (m) {
    case Method::ACG: return "acg";
    case Method::GCG: return "gcg";
    case Method::ACL: return "acl";
    case Method::GCL: return "gcl";
    }
    return "?";
}

std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::Unsupervised: return "unsupervised";
    case Mode::SemiSupervised: return "semi_supervised";
    case Mode::Supervised: return "supervised";
    }
    return "?";
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::ACG, Method::GCG, Method::ACL, Method::GCL})
        if (s == to_string(m))
            return m;
    throw ConfigError("unknown method '" + std::string(s) + "' (expected acg|gcg|acl|gcl)");
}

Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::Unsupervised, Mode::SemiSupervised, Mode::Supervised})
        if (s == to_string(m))
            return m;
    throw ConfigError("unknown mode '" + std::string(s) + "'");
}

std::size_t ScoreVector::flagged_count() const {
    std::size_t n = 0;
    for (bool f : flagged)
        n += f;
    return n;
}

namespace {

DataMatrix maybe_scale(const DataMatrix &m, bool scaler) {
    return scaler ? apply_scaler(m, fit_scaler(m)) : m;
}

void check_policy_length(const TruncationPolicy &policy, std::size_t steps) {
    if (!policy.is_uniform() && policy.step_taus().size() != steps)
        throw ConfigError("per-step tau list has " + std::to_string(policy.step_taus().size()) +
                          " entries, the decomposition has " + std::to_string(steps) + " steps");
}

struct GlobalCompression {
    DataMatrix original;   // scaled and padded stack
    DataMatrix compressed; // same shape
    std::size_t test_offset;
};

GlobalCompression compress_global(const DataMatrix &test, const std::optional<DataMatrix> &train,
                                  const DetectorConfig &cfg) {
    if (train && train->cols() != test.cols())
        throw DimensionError("training data has " + std::to_string(train->cols()) +
                             " features, test data has " + std::to_string(test.cols()));
    const DataMatrix stacked = train ? DataMatrix::stack(*train, test) : test;
    DataMatrix padded = pad_features(maybe_scale(stacked, cfg.scaler), cfg.shape);
    if (padded.values().cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInputError("dataset is all zeros");
    check_policy_length(cfg.policy, cfg.shape.size());
    const TTChain chain = tt_decompose(matrix_as_tensor(padded, cfg.shape), cfg.policy);
    DataMatrix compressed = contract_to_matrix(chain);
    return {std::move(padded), std::move(compressed), train ? train->rows() : 0};
}

double self_score(const Eigen::Ref<const Vector> &y, const Eigen::Ref<const Vector> &compressed,
                  bool &flag) {
    const double norm2 = y.squaredNorm();
    flag = norm2 == 0.0;
    return flag ? 0.0 : y.dot(compressed) / norm2;
}

/// Sum of the unit-normalized rows; zero rows are skipped.
Vector normalized_row_sum(const RowMatrix &rows) {
    Vector sum = Vector::Zero(rows.cols());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const double norm = rows.row(i).norm();
        if (norm > 0.0)
            sum += rows.row(i).transpose() / norm;
    }
    return sum;
}

double group_score(const Eigen::Ref<const Vector> &y, const Vector &normalized_sum, bool &flag) {
    const double norm = y.norm();
    flag = norm == 0.0;
    return flag ? 0.0 : y.dot(normalized_sum) / norm;
}

} // namespace

ScoreVector acg_score(const DataMatrix &test, const std::optional<DataMatrix> &train,
                      const DetectorConfig &cfg) {
    const GlobalCompression g = compress_global(test, train, cfg);
    ScoreVector out;
    out.values.resize(test.rows());
    out.flagged.resize(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
        const auto idx = static_cast<Eigen::Index>(g.test_offset + r);
        bool flag = false;
        out.values[r] = self_score(g.original.values().row(idx).transpose(),
                                   g.compressed.values().row(idx).transpose(), flag);
        out.flagged[r] = flag;
    }
    return out;
}

ScoreVector gcg_score(const DataMatrix &test, const std::optional<DataMatrix> &train,
                      const DetectorConfig &cfg) {
    const GlobalCompression g = compress_global(test, train, cfg);
    // sum_i <y, x'_i>/|x'_i| = <y, sum_i x'_i/|x'_i|>
    const Vector direction = normalized_row_sum(g.compressed.values());
    ScoreVector out;
    out.values.resize(test.rows());
    out.flagged.resize(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
        const auto idx = static_cast<Eigen::Index>(g.test_offset + r);
        bool flag = false;
        out.values[r] = group_score(g.original.values().row(idx).transpose(), direction, flag);
        out.flagged[r] = flag;
    }
    return out;
}

OrthogonalBasis local_fit(const Vector &train_row, const DetectorConfig &cfg) {
    const Vector padded = pad_vector(train_row, cfg.shape);
    if (padded.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInputError("training vector is all zeros");
    if (cfg.shape.size() < 2)
        throw ConfigError("local methods need a shape with at least two factors");
    check_policy_length(cfg.policy, cfg.shape.size() - 1);
    TTChain chain = tt_decompose(vector_as_tensor(padded, cfg.shape), cfg.policy);
    std::vector<TTCore> cores(chain.cores().begin(), chain.cores().end() - 1);
    return OrthogonalBasis{std::move(cores), cfg.shape, cfg.policy};
}

Vector local_compress(const Vector &test_row, const OrthogonalBasis &basis,
                      const DetectorConfig &cfg) {
    if (!(basis.shape == cfg.shape))
        throw ConfigError("basis was fitted with a different shape");
    const auto &dims = cfg.shape.factors();
    if (basis.cores.size() + 1 != dims.size())
        throw StructuralError("basis has " + std::to_string(basis.cores.size()) +
                              " cores for a shape of " + std::to_string(dims.size()) + " factors");
    const Vector x = pad_vector(test_row, cfg.shape);
    const Vector zero = Vector::Zero(x.size());

    std::size_t bond = 1;
    std::size_t remaining = static_cast<std::size_t>(x.size());
    RowMatrix remainder = x.transpose();
    for (std::size_t i = 0; i < basis.cores.size(); ++i) {
        const TTCore &b = basis.cores[i];
        remaining /= dims[i];
        if (b.left() != bond || b.physical() != dims[i])
            throw StructuralError("basis core " + std::to_string(i + 1) +
                                  " does not match the carried bond");
        const Eigen::Map<const RowMatrix> unfolding(remainder.data(),
                                                    static_cast<Eigen::Index>(bond * dims[i]),
                                                    static_cast<Eigen::Index>(remaining));
        if (unfolding.cwiseAbs().maxCoeff() == 0.0)
            return zero;
        const TruncatedSvd svd = truncated_svd(unfolding, cfg.policy.tau_for_step(i + 1));
        remainder = b.unfolding().transpose() * svd.reconstruct();
        bond = b.right();
    }

    std::vector<TTCore> cores = basis.cores;
    cores.emplace_back(bond, dims.back(), 1,
                       Eigen::Map<const RowMatrix>(remainder.data(),
                                                   static_cast<Eigen::Index>(bond * dims.back()),
                                                   1));
    const DenseTensor t = tt_contract(TTChain(std::move(cores)));
    return Eigen::Map<const Vector>(t.data.data(), static_cast<Eigen::Index>(t.size()));
}

namespace {

struct LocalInputs {
    DataMatrix test;
    DataMatrix reference;
    Vector train;
};

// Scaler (when on) is fit on the training row stacked with every row that gets scored or compressed.
LocalInputs prepare_local(const DataMatrix &test, const std::optional<DataMatrix> &reference,
                          const Vector &train_row, const DetectorConfig &cfg) {
    if (static_cast<std::size_t>(train_row.size()) != test.cols())
        throw DimensionError("training row has " + std::to_string(train_row.size()) +
                             " features, test data has " + std::to_string(test.cols()));
    if (reference && reference->cols() != test.cols())
        throw DimensionError("reference data has " + std::to_string(reference->cols()) +
                             " features, test data has " + std::to_string(test.cols()));
    DataMatrix train(RowMatrix(train_row.transpose()));
    if (!cfg.scaler)
        return {pad_features(test, cfg.shape),
                pad_features(reference ? *reference : test, cfg.shape),
                pad_vector(train_row, cfg.shape)};

    DataMatrix all = DataMatrix::stack(train, test);
    if (reference)
        all = DataMatrix::stack(all, *reference);
    const ScalerParams params = fit_scaler(all);
    const DataMatrix scaled_test = apply_scaler(test, params);
    const DataMatrix scaled_ref = reference ? apply_scaler(*reference, params) : scaled_test;
    const DataMatrix scaled_train = apply_scaler(train, params);
    return {pad_features(scaled_test, cfg.shape), pad_features(scaled_ref, cfg.shape),
            pad_vector(scaled_train.values().row(0).transpose(), cfg.shape)};
}

} // namespace

ScoreVector acl_score(const DataMatrix &test, const Vector &train_row, const DetectorConfig &cfg) {
    const LocalInputs in = prepare_local(test, std::nullopt, train_row, cfg);
    const OrthogonalBasis basis = local_fit(in.train, cfg);
    ScoreVector out;
    out.values.resize(test.rows());
    out.flagged.resize(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
        const Vector y = in.test.values().row(static_cast<Eigen::Index>(r)).transpose();
        bool flag = false;
        out.values[r] = self_score(y, local_compress(y, basis, cfg), flag);
        out.flagged[r] = flag;
    }
    return out;
}

ScoreVector gcl_score(const DataMatrix &test, const DataMatrix &reference, const Vector &train_row,
                      const DetectorConfig &cfg) {
    const LocalInputs in = prepare_local(test, reference, train_row, cfg);
    const OrthogonalBasis basis = local_fit(in.train, cfg);
    RowMatrix compressed(in.reference.values().rows(), in.reference.values().cols());
    for (Eigen::Index i = 0; i < compressed.rows(); ++i)
        compressed.row(i) = local_compress(in.reference.values().row(i).transpose(), basis, cfg);
    const Vector direction = normalized_row_sum(compressed);
    ScoreVector out;
    out.values.resize(test.rows());
    out.flagged.resize(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
        bool flag = false;
        out.values[r] = group_score(
            in.test.values().row(static_cast<Eigen::Index>(r)).transpose(), direction, flag);
        out.flagged[r] = flag;
    }
    return out;
}

void save_basis(const std::filesystem::path &path, const OrthogonalBasis &basis) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_chain(out, basis.cores);
}

OrthogonalBasis load_basis(const std::filesystem::path &path, const DetectorConfig &cfg) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::vector<TTCore> cores = read_cores(in);
    const auto &dims = cfg.shape.factors();
    if (cores.size() + 1 != dims.size())
        throw StructuralError("stored basis has " + std::to_string(cores.size()) +
                              " cores, shape needs " + std::to_string(dims.size() - 1));
    for (std::size_t i = 0; i < cores.size(); ++i) {
        if (cores[i].physical() != dims[i] || (i == 0 && cores[i].left() != 1) ||
            (i > 0 && cores[i].left() != cores[i - 1].right()))
            throw StructuralError("stored basis core " + std::to_string(i + 1) +
                                  " is inconsistent with the shape");
    }
    return OrthogonalBasis{std::move(cores), cfg.shape, cfg.policy};
}

} // namespace ttad
