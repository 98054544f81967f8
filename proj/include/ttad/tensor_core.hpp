#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ttad {

/// Row-major dense matrix, the storage used for all data and unfoldings.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/**
 * N x M real matrix whose rows are data points and columns are features.
 *
 * Construction validates N >= 1, M >= 1 and that every entry is finite.
 */
class DataMatrix {
public:
    explicit DataMatrix(RowMatrix values);
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    const RowMatrix &values() const noexcept { return values_; }
    double operator()(std::size_t r, std::size_t c) const { return values_(r, c); }
    std::span<const double> row(std::size_t r) const;

    /// Rows of `top` followed by rows of `bottom`; column counts must match.
    static DataMatrix stack(const DataMatrix &top, const DataMatrix &bottom);

private:
    RowMatrix values_;
};

/// Ordered factors d_1..d_k (each >= 2) of the padded feature width.
class FactorShape {
public:
    explicit FactorShape(std::vector<std::size_t> factors);
    FactorShape(std::initializer_list<std::size_t> factors)
        : FactorShape(std::vector<std::size_t>(factors)) {}

    const std::vector<std::size_t> &factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    std::size_t product() const noexcept { return product_; }

    bool operator==(const FactorShape &) const = default;

private:
    std::vector<std::size_t> factors_;
    std::size_t product_ = 1;
};

/// Dense tensor, row-major (last index fastest).
struct DenseTensor {
    std::vector<std::size_t> dims;
    std::vector<double> data;

    std::size_t order() const noexcept { return dims.size(); }
    std::size_t size() const noexcept { return data.size(); }
    double at(std::span<const std::size_t> multi_index) const;
};

/// Row-major linearization of a multi-index. Throws BoundsError on out-of-range entries.
std::size_t group_indices(std::span<const std::size_t> multi_index,
                          std::span<const std::size_t> dims);

/// Inverse of group_indices.
std::vector<std::size_t> split_indices(std::size_t linear, std::span<const std::size_t> dims);

/// Appends zero columns so the width equals shape.product(). Row norms are unchanged.
DataMatrix pad_features(const DataMatrix &m, const FactorShape &shape);

/// Zero-pads a single vector to shape.product().
Vector pad_vector(const Vector &v, const FactorShape &shape);

/// Order-(1+k) view (N, d_1, ..., d_k) of a matrix whose width equals shape.product().
DenseTensor matrix_as_tensor(const DataMatrix &m, const FactorShape &shape);

/// Order-k tensor (d_1, ..., d_k) of a single vector of length shape.product().
DenseTensor vector_as_tensor(const Vector &v, const FactorShape &shape);

/// Flattens an order-(1+k) tensor back to its N x prod(d) matrix.
DataMatrix tensor_as_matrix(const DenseTensor &t);

} // namespace ttad
