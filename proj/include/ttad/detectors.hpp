#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttad/svd_engine.hpp"
#include "ttad/tensor_core.hpp"
#include "ttad/tt_builder.hpp"

namespace ttad {

/// Auto/group comparison crossed with global/local compression.
enum class Method { ACG, GCG, ACL, GCL };

/// Labels the role of extra training rows for the global methods; the computation is the same.
enum class Mode { Unsupervised, SemiSupervised, Supervised };

std::string_view to_string(Method m);
std::string_view to_string(Mode m);
Method parse_method(std::string_view s);
Mode parse_mode(std::string_view s);

inline bool is_local(Method m) { return m == Method::ACL || m == Method::GCL; }

struct DetectorConfig {
    Method method = Method::ACG;
    FactorShape shape{2, 2};
    TruncationPolicy policy = TruncationPolicy::uniform(0.0);
    bool scaler = false;
    Mode mode = Mode::Unsupervised;
};

/// Decision values, larger = more normal. Zero-norm rows score exactly 0 and are flagged.
struct ScoreVector {
    std::vector<double> values;
    std::vector<bool> flagged;

    std::size_t size() const noexcept { return values.size(); }
    std::size_t flagged_count() const;
};

/// First n-1 left-isometric cores of a training vector's TT.
struct OrthogonalBasis {
    std::vector<TTCore> cores;
    FactorShape shape;
    TruncationPolicy policy;
};

/**
 * Global auto comparison: compress train (if any) stacked above test, then
 * d = <y, y'> / |y|^2 for each test row y and its compressed version y'.
 */
ScoreVector acg_score(const DataMatrix &test, const std::optional<DataMatrix> &train,
                      const DetectorConfig &cfg);

/**
 * Global group comparison: d = sum_i <y, x'_i> / (|y| |x'_i|) over every compressed
 * row x'_i of the stacked set (self term included). Zero compressed rows contribute 0.
 */
ScoreVector gcg_score(const DataMatrix &test, const std::optional<DataMatrix> &train,
                      const DetectorConfig &cfg);

/// TT of the (zero-padded) training vector under cfg.policy, keeping cores 1..n-1.
OrthogonalBasis local_fit(const Vector &train_row, const DetectorConfig &cfg);

/**
 * Forces a test vector into the basis: at step i, truncate the current remainder
 * with tau_i and carry (B^i)^T times the truncated reconstruction; the final
 * remainder is the last core. Returns the contracted chain as a flat vector.
 * A remainder that becomes exactly zero yields the zero vector.
 */
Vector local_compress(const Vector &test_row, const OrthogonalBasis &basis,
                      const DetectorConfig &cfg);

ScoreVector acl_score(const DataMatrix &test, const Vector &train_row, const DetectorConfig &cfg);

/// Group comparison of each test row against the local compressions of every reference row.
ScoreVector gcl_score(const DataMatrix &test, const DataMatrix &reference, const Vector &train_row,
                      const DetectorConfig &cfg);

/// Saves a basis with the chain container (cores only; shape and policy come from config).
void save_basis(const std::filesystem::path &path, const OrthogonalBasis &basis);
OrthogonalBasis load_basis(const std::filesystem::path &path, const DetectorConfig &cfg);

} // namespace ttad
