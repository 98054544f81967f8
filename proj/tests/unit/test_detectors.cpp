#include <filesystem>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ttad/detectors.hpp"
#include "ttad/errors.hpp"

using namespace ttad;

namespace {

DetectorConfig config(Method m, FactorShape shape, double tau, bool scaler = false) {
    return DetectorConfig{m, std::move(shape), TruncationPolicy::uniform(tau), scaler,
                          Mode::Unsupervised};
}

DataMatrix gaussian_rows(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
    return DataMatrix(RowMatrix(oracle::random_matrix(rng, rows, cols)));
}

Vector random_vector(std::mt19937_64 &rng, Eigen::Index n) {
    return oracle::random_matrix(rng, n, 1).col(0);
}

void expect_scores_near(const ScoreVector &got, const oracle::Vec &want, double tol) {
    ASSERT_EQ(got.size(), static_cast<std::size_t>(want.size()));
    for (std::size_t i = 0; i < got.size(); ++i)
        EXPECT_NEAR(got.values[i], want(static_cast<Eigen::Index>(i)), tol) << "row " << i;
}

} // namespace

// ---------------------------------------------------------------- global auto

TEST(AcgScore, TauZeroIsAllOnes) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const DataMatrix test = gaussian_rows(rng, 3 + trial, 6);
        const DataMatrix train = gaussian_rows(rng, 4, 6);
        for (bool scaler : {false, true}) {
            const auto cfg = config(Method::ACG, FactorShape{2, 2, 2}, 0.0, scaler);
            for (const auto &s : {acg_score(test, std::nullopt, cfg), acg_score(test, train, cfg)}) {
                ASSERT_EQ(s.size(), test.rows());
                for (double d : s.values)
                    EXPECT_NEAR(d, 1.0, 1e-10);
            }
        }
    }
}

TEST(AcgScore, IdenticalProductRowsSurviveHeavyTruncation) {
    RowMatrix m(5, 8);
    for (int r = 0; r < 5; ++r)
        m.row(r) << 6, 3, 1, 0.5, -12, -6, -2, -1;
    const auto s = acg_score(DataMatrix(m), std::nullopt, config(Method::ACG, {2, 2, 2}, 0.9));
    for (double d : s.values)
        EXPECT_NEAR(d, 1.0, 1e-8);
}

TEST(AcgScore, PlantedOutlierScoresLowest) {
    RowMatrix m(4, 4);
    m << 1.0, 2.0, 3.0, 4.0,
         1.1, 2.1, 2.9, 4.2,
         0.9, 1.8, 3.1, 3.9,
         1.5, -1.0, 0.5, -1.0;
    // Frozen from an independent numpy TT-SVD at tau = 0.3.
    const std::vector<double> expected{0.9951315427247123, 0.9953937767672103,
                                       0.9926196566789302, 0.06184162390420473};
    const auto s = acg_score(DataMatrix(m), std::nullopt, config(Method::ACG, {2, 2}, 0.3));
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(s.values[i], expected[i], 1e-8);
    // At low tau nothing is truncated enough to single it out.
    const auto low = acg_score(DataMatrix(m), std::nullopt, config(Method::ACG, {2, 2}, 0.1));
    EXPECT_GT(low.values[3], low.values[2]);
}

TEST(AcgScore, MatchesBruteForceOracle) {
    std::mt19937_64 rng(2);
    const std::vector<std::size_t> shape{2, 2, 2, 2};
    for (double tau : {0.05, 0.15, 0.3, 0.5, 0.8}) {
        const DataMatrix x = gaussian_rows(rng, 8, 16);
        const auto s = acg_score(x, std::nullopt, config(Method::ACG, FactorShape(shape), tau));
        const oracle::Mat xm = x.values();
        expect_scores_near(s, oracle::auto_scores(xm, oracle::global_compress(xm, shape, tau)), 1e-8);
    }
}

TEST(AcgScore, SupervisedScoresOnlyTestRows) {
    std::mt19937_64 rng(3);
    const DataMatrix train = gaussian_rows(rng, 5, 8);
    const DataMatrix test = gaussian_rows(rng, 3, 8);
    const auto cfg = config(Method::ACG, {2, 4}, 0.4);
    const auto s = acg_score(test, train, cfg);
    const auto all = acg_score(DataMatrix::stack(train, test), std::nullopt, cfg);
    ASSERT_EQ(s.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(s.values[i], all.values[5 + i], 1e-12);
    EXPECT_THROW(acg_score(test, gaussian_rows(rng, 2, 7), cfg), DimensionError);
}

TEST(AcgScore, InvariantUnderZeroPaddingColumns) {
    std::mt19937_64 rng(4);
    const DataMatrix x = gaussian_rows(rng, 6, 5);
    RowMatrix wider = RowMatrix::Zero(6, 7);
    wider.leftCols(5) = x.values();
    for (double tau : {0.1, 0.3}) {
        const auto a = acg_score(x, std::nullopt, config(Method::ACG, {2, 2, 2}, tau));
        const auto b = acg_score(DataMatrix(wider), std::nullopt, config(Method::ACG, {2, 2, 2}, tau));
        for (std::size_t i = 0; i < 6; ++i)
            EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
    }
}

TEST(AcgScore, RowPermutationEquivariance) {
    std::mt19937_64 rng(5);
    const DataMatrix x = gaussian_rows(rng, 6, 8);
    const std::vector<Eigen::Index> perm{3, 0, 5, 1, 4, 2};
    RowMatrix permuted(6, 8);
    for (Eigen::Index i = 0; i < 6; ++i)
        permuted.row(i) = x.values().row(perm[static_cast<std::size_t>(i)]);
    for (double tau : {0.1, 0.3, 0.6}) {
        const auto cfg = config(Method::ACG, {2, 2, 2}, tau);
        const auto a = acg_score(x, std::nullopt, cfg);
        const auto b = acg_score(DataMatrix(permuted), std::nullopt, cfg);
        for (std::size_t i = 0; i < 6; ++i)
            EXPECT_NEAR(b.values[i], a.values[static_cast<std::size_t>(perm[i])], 1e-10);
    }
}

TEST(AcgScore, ZeroRowFlaggedAndZeroDatasetRejected) {
    RowMatrix m(3, 4);
    m << 1, 2, 3, 4, 0, 0, 0, 0, 2, 1, 0, 1;
    const auto s = acg_score(DataMatrix(m), std::nullopt, config(Method::ACG, {2, 2}, 0.2));
    EXPECT_EQ(s.values[1], 0.0);
    EXPECT_TRUE(s.flagged[1]);
    EXPECT_FALSE(s.flagged[0]);
    EXPECT_EQ(s.flagged_count(), 1u);
    EXPECT_THROW(acg_score(DataMatrix(RowMatrix::Zero(3, 4)), std::nullopt,
                           config(Method::ACG, {2, 2}, 0.2)),
                 DegenerateInputError);
}

// --------------------------------------------------------------- global group

TEST(GcgScore, SingleRowSelfCosine) {
    RowMatrix m(1, 4);
    m << 1, -2, 0.5, 3;
    const auto s = gcg_score(DataMatrix(m), std::nullopt, config(Method::GCG, {2, 2}, 0.0));
    EXPECT_NEAR(s.values[0], 1.0, 1e-12);
}

TEST(GcgScore, OrthogonalRows) {
    RowMatrix m(2, 4);
    m << 1, 2, 0, 0, 0, 0, 3, -1;
    const auto s = gcg_score(DataMatrix(m), std::nullopt, config(Method::GCG, {2, 2}, 0.0));
    EXPECT_NEAR(s.values[0], 1.0, 1e-12);
    EXPECT_NEAR(s.values[1], 1.0, 1e-12);
}

TEST(GcgScore, MatchesExplicitDoubleSum) {
    std::mt19937_64 rng(6);
    const std::vector<std::size_t> shape{2, 2};
    const DataMatrix x = gaussian_rows(rng, 6, 4);
    const oracle::Mat xm = x.values();
    for (double tau : {0.05, 0.2, 0.35, 0.5, 0.75}) {
        const auto s = gcg_score(x, std::nullopt, config(Method::GCG, FactorShape(shape), tau));
        expect_scores_near(s, oracle::group_scores(xm, oracle::global_compress(xm, shape, tau)), 1e-8);
    }
}

TEST(GcgScore, SumsOverTrainingRowsToo) {
    std::mt19937_64 rng(7);
    const DataMatrix train = gaussian_rows(rng, 4, 8);
    const DataMatrix test = gaussian_rows(rng, 3, 8);
    const oracle::Mat stacked = DataMatrix::stack(train, test).values();
    const auto s = gcg_score(test, train, config(Method::GCG, {2, 2, 2}, 0.3));
    const oracle::Vec all = oracle::group_scores(stacked, oracle::global_compress(stacked, {2, 2, 2}, 0.3));
    expect_scores_near(s, all.tail(3), 1e-8);
}

// ---------------------------------------------------------------------- local

TEST(LocalFit, ExactBasisReproducesVector) {
    Vector v(8);
    v << 1, -2, 3, 0.5, 4, 1, -1, 2;
    const auto cfg = config(Method::ACL, {2, 2, 2}, 0.0);
    const OrthogonalBasis basis = local_fit(v, cfg);
    ASSERT_EQ(basis.cores.size(), 2u);
    const Vector out = local_compress(v, basis, cfg);
    EXPECT_LE((out - v).norm(), 1e-10 * v.norm());
}

TEST(LocalFit, OneHotHasUnitBonds) {
    Vector v = Vector::Zero(16);
    v(11) = 2.5;
    const OrthogonalBasis basis = local_fit(v, config(Method::ACL, {2, 2, 2, 2}, 0.0));
    for (const auto &c : basis.cores)
        EXPECT_EQ(c.right(), 1u);
}

TEST(LocalFit, CoresAreIsometries) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const OrthogonalBasis basis =
            local_fit(random_vector(rng, 16), config(Method::ACL, {2, 2, 2, 2}, 0.2));
        for (const auto &c : basis.cores)
            EXPECT_LE(c.isometry_defect(), 1e-10);
    }
}

TEST(LocalFit, Errors) {
    EXPECT_THROW(local_fit(Vector::Zero(8), config(Method::ACL, {2, 2, 2}, 0.1)),
                 DegenerateInputError);
    EXPECT_THROW(local_fit(Vector::Ones(8), config(Method::ACL, FactorShape{8}, 0.1)), ConfigError);
}

TEST(LocalCompress, OrthogonalComponentIsRemoved) {
    // Product training row: first unfolding has rank one, spanned by (1, 0).
    Vector train(8);
    train << 1, 2, 3, 4, 0, 0, 0, 0;
    const auto cfg = config(Method::ACL, {2, 2, 2}, 0.0);
    const OrthogonalBasis basis = local_fit(train, cfg);
    EXPECT_EQ(basis.cores[0].right(), 1u);
    Vector test(8);
    test << 0.5, -1, 0.2, 0.1, 3, 1, -2, 4;
    const Vector out = local_compress(test, basis, cfg);
    const oracle::Vec ref = oracle::local_compress(train, test, {2, 2, 2}, 0.0);
    EXPECT_LT(out.norm(), test.norm());
    EXPECT_NEAR(out.norm(), ref.norm(), 1e-10);
    EXPECT_LE((out - ref).norm(), 1e-10);
}

TEST(LocalCompress, LinearAndIdempotentAtTauZero) {
    std::mt19937_64 rng(9);
    const auto cfg = config(Method::ACL, {2, 2, 2, 2}, 0.0);
    for (int trial = 0; trial < 10; ++trial) {
        const OrthogonalBasis basis = local_fit(random_vector(rng, 16), cfg);
        const Vector x = random_vector(rng, 16);
        const Vector once = local_compress(x, basis, cfg);
        EXPECT_LE((local_compress(once, basis, cfg) - once).norm(), 1e-10 * x.norm());
        EXPECT_LE((local_compress(-2.5 * x, basis, cfg) + 2.5 * once).norm(), 1e-10 * x.norm());
    }
}

TEST(LocalCompress, MatchesFullSpaceProjectorOracle) {
    std::mt19937_64 rng(10);
    const std::vector<std::size_t> shape{2, 2, 2, 2};
    for (double tau : {0.0, 0.1, 0.25, 0.4, 0.6}) {
        const auto cfg = config(Method::ACL, FactorShape(shape), tau);
        const Vector train = random_vector(rng, 16);
        const OrthogonalBasis basis = local_fit(train, cfg);
        for (int k = 0; k < 5; ++k) {
            const Vector x = random_vector(rng, 16);
            const oracle::Vec ref = oracle::local_compress(train, x, shape, tau);
            EXPECT_LE((local_compress(x, basis, cfg) - ref).norm(), 1e-8);
        }
    }
}

TEST(LocalCompress, ZeroInputGivesZero) {
    const auto cfg = config(Method::ACL, {2, 2, 2}, 0.1);
    const OrthogonalBasis basis = local_fit(Vector::Ones(8), cfg);
    EXPECT_EQ(local_compress(Vector::Zero(8), basis, cfg).norm(), 0.0);
}

TEST(LocalCompress, ShapeMismatchRejected) {
    const OrthogonalBasis basis = local_fit(Vector::Ones(8), config(Method::ACL, {2, 2, 2}, 0.1));
    EXPECT_THROW(local_compress(Vector::Ones(8), basis, config(Method::ACL, {2, 4}, 0.1)),
                 ConfigError);
}

TEST(AclScore, TrainingRowScoresOne) {
    Vector train(8);
    train << 1, -2, 3, 0.5, 4, 1, -1, 2;
    RowMatrix rows(3, 8);
    for (int r = 0; r < 3; ++r)
        rows.row(r) = train.transpose();
    const auto s = acl_score(DataMatrix(rows), train, config(Method::ACL, {2, 2, 2}, 0.0));
    for (double d : s.values)
        EXPECT_NEAR(d, 1.0, 1e-10);
}

TEST(AclScore, TauZeroLosslessWhenBasisIsSquare) {
    // With two factors and d_1 <= d_2 the single basis core is a full rotation.
    std::mt19937_64 rng(11);
    const DataMatrix test = gaussian_rows(rng, 6, 8);
    const auto s = acl_score(test, random_vector(rng, 8), config(Method::ACL, {2, 4}, 0.0));
    for (double d : s.values)
        EXPECT_NEAR(d, 1.0, 1e-10);
}

TEST(AclScore, MatchesProjectorOracle) {
    std::mt19937_64 rng(12);
    const std::vector<std::size_t> shape{2, 2, 2, 2};
    const DataMatrix test = gaussian_rows(rng, 5, 16);
    const Vector train = random_vector(rng, 16);
    for (double tau : {0.0, 0.1, 0.2, 0.35, 0.5}) {
        const auto s = acl_score(test, train, config(Method::ACL, FactorShape(shape), tau));
        oracle::Mat compressed(5, 16);
        for (Eigen::Index r = 0; r < 5; ++r)
            compressed.row(r) =
                oracle::local_compress(train, test.values().row(r).transpose(), shape, tau);
        expect_scores_near(s, oracle::auto_scores(test.values(), compressed), 1e-8);
    }
}

TEST(AclScore, ZeroRowFlagged) {
    RowMatrix m(2, 8);
    m.row(0) << 1, 2, 3, 4, 5, 6, 7, 8;
    m.row(1).setZero();
    const auto s = acl_score(DataMatrix(m), Vector::Ones(8), config(Method::ACL, {2, 2, 2}, 0.1));
    EXPECT_TRUE(s.flagged[1]);
    EXPECT_EQ(s.values[1], 0.0);
    EXPECT_THROW(acl_score(DataMatrix(m), Vector::Ones(7), config(Method::ACL, {2, 2, 2}, 0.1)),
                 DimensionError);
}

TEST(GclScore, SelfReferenceScoresOne) {
    RowMatrix m(1, 8);
    m << 1, -2, 3, 0.5, 4, 1, -1, 2;
    const DataMatrix x(m);
    const auto s = gcl_score(x, x, m.row(0).transpose(), config(Method::GCL, {2, 2, 2}, 0.0));
    EXPECT_NEAR(s.values[0], 1.0, 1e-10);
}

TEST(GclScore, OrthogonalAfterProjectionScoresZero) {
    Vector train(4);
    train << 1, 0, 0, 0; // basis spans the first half only
    RowMatrix ref(2, 4), test(1, 4);
    ref << 1, 2, 3, 4, -1, 0.5, 2, 2;
    test << 0, 0, 1, 1;
    const auto s = gcl_score(DataMatrix(test), DataMatrix(ref), train, config(Method::GCL, {2, 2}, 0.0));
    EXPECT_NEAR(s.values[0], 0.0, 1e-12);
    EXPECT_FALSE(s.flagged[0]);
}

TEST(GclScore, MatchesBruteForceOracle) {
    std::mt19937_64 rng(13);
    const std::vector<std::size_t> shape{2, 2, 2};
    const DataMatrix test = gaussian_rows(rng, 4, 8);
    const DataMatrix ref = gaussian_rows(rng, 4, 8);
    const Vector train = random_vector(rng, 8);
    for (double tau : {0.0, 0.1, 0.3, 0.5, 0.7}) {
        const auto s = gcl_score(test, ref, train, config(Method::GCL, FactorShape(shape), tau));
        oracle::Mat compressed(4, 8);
        for (Eigen::Index r = 0; r < 4; ++r)
            compressed.row(r) =
                oracle::local_compress(train, ref.values().row(r).transpose(), shape, tau);
        expect_scores_near(s, oracle::group_scores(test.values(), compressed), 1e-8);
    }
}

TEST(OrthogonalBasis, SaveAndReload) {
    std::mt19937_64 rng(14);
    const auto cfg = config(Method::ACL, {2, 2, 2, 2}, 0.15);
    const OrthogonalBasis basis = local_fit(random_vector(rng, 16), cfg);
    const auto path = std::filesystem::temp_directory_path() / "ttad_basis_test.txt";
    save_basis(path, basis);
    const OrthogonalBasis back = load_basis(path, cfg);
    std::filesystem::remove(path);
    ASSERT_EQ(back.cores.size(), basis.cores.size());
    const Vector x = random_vector(rng, 16);
    EXPECT_EQ(local_compress(x, back, cfg), local_compress(x, basis, cfg));
    EXPECT_THROW(load_basis(path, cfg), IoError);
}

TEST(MethodNames, ParseRoundTrip) {
    for (Method m : {Method::ACG, Method::GCG, Method::ACL, Method::GCL})
        EXPECT_EQ(parse_method(to_string(m)), m);
    for (Mode m : {Mode::Unsupervised, Mode::SemiSupervised, Mode::Supervised})
        EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_method("pca"), ConfigError);
}
