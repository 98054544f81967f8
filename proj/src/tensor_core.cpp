#include "ttad/tensor_core.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ttad/errors.hpp"

namespace ttad {

namespace {

void check_finite(const RowMatrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (!std::isfinite(m(r, c)))
                throw DimensionError("non-finite value at row " + std::to_string(r) +
                                     ", column " + std::to_string(c));
}

std::size_t product_of(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

} // namespace

DataMatrix::DataMatrix(RowMatrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1)
        throw DimensionError("data matrix must have at least one row and one column");
    check_finite(values_);
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major) {
    if (rows * cols != row_major.size())
        throw DimensionError("data buffer of size " + std::to_string(row_major.size()) +
                             " does not match " + std::to_string(rows) + " x " +
                             std::to_string(cols));
    *this = DataMatrix(RowMatrix(Eigen::Map<const RowMatrix>(
        row_major.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))));
}

std::span<const double> DataMatrix::row(std::size_t r) const {
    if (r >= rows())
        throw BoundsError("row " + std::to_string(r) + " out of range");
    return {values_.data() + r * cols(), cols()};
}

DataMatrix DataMatrix::stack(const DataMatrix &top, const DataMatrix &bottom) {
    if (top.cols() != bottom.cols())
        throw DimensionError("cannot stack matrices with " + std::to_string(top.cols()) +
                             " and " + std::to_string(bottom.cols()) + " columns");
    RowMatrix out(top.values_.rows() + bottom.values_.rows(), top.values_.cols());
    out << top.values_, bottom.values_;
    return DataMatrix(std::move(out));
}

FactorShape::FactorShape(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
        throw ConfigError("factor shape must have at least one factor");
    for (std::size_t d : factors_) {
        if (d < 2)
            throw ConfigError("factor shape entries must be >= 2, got " + std::to_string(d));
        product_ *= d;
    }
}

double DenseTensor::at(std::span<const std::size_t> multi_index) const {
    return data[group_indices(multi_index, dims)];
}

std::size_t group_indices(std::span<const std::size_t> multi_index,
                          std::span<const std::size_t> dims) {
    if (multi_index.size() != dims.size())
        throw BoundsError("multi-index has " + std::to_string(multi_index.size()) +
                          " entries for " + std::to_string(dims.size()) + " dimensions");
    std::size_t linear = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (multi_index[k] >= dims[k])
            throw BoundsError("index " + std::to_string(multi_index[k]) + " at position " +
                              std::to_string(k) + " exceeds dimension " +
                              std::to_string(dims[k]));
        linear = linear * dims[k] + multi_index[k];
    }
    return linear;
}

std::vector<std::size_t> split_indices(std::size_t linear, std::span<const std::size_t> dims) {
    const std::size_t total = product_of(dims);
    if (linear >= total)
        throw BoundsError("linear index " + std::to_string(linear) + " out of range [0, " +
                          std::to_string(total) + ")");
    std::vector<std::size_t> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = linear % dims[k];
        linear /= dims[k];
    }
    return out;
}

DataMatrix pad_features(const DataMatrix &m, const FactorShape &shape) {
    if (shape.product() < m.cols())
        throw DimensionError("shape product " + std::to_string(shape.product()) +
                             " is smaller than feature count " + std::to_string(m.cols()));
    if (shape.product() == m.cols())
        return m;
    RowMatrix out = RowMatrix::Zero(m.values().rows(), static_cast<Eigen::Index>(shape.product()));
    out.leftCols(m.values().cols()) = m.values();
    return DataMatrix(std::move(out));
}

Vector pad_vector(const Vector &v, const FactorShape &shape) {
    if (shape.product() < static_cast<std::size_t>(v.size()))
        throw DimensionError("shape product " + std::to_string(shape.product()) +
                             " is smaller than vector length " + std::to_string(v.size()));
    Vector out = Vector::Zero(static_cast<Eigen::Index>(shape.product()));
    out.head(v.size()) = v;
    return out;
}

DenseTensor matrix_as_tensor(const DataMatrix &m, const FactorShape &shape) {
    if (m.cols() != shape.product())
        throw DimensionError("matrix width " + std::to_string(m.cols()) +
                             " does not equal shape product " + std::to_string(shape.product()) +
                             " (pad first)");
    DenseTensor t;
    t.dims.reserve(shape.size() + 1);
    t.dims.push_back(m.rows());
    t.dims.insert(t.dims.end(), shape.factors().begin(), shape.factors().end());
    // Row-major storage makes the split a pure reinterpretation of the buffer.
    t.data.assign(m.values().data(), m.values().data() + m.values().size());
    return t;
}

DenseTensor vector_as_tensor(const Vector &v, const FactorShape &shape) {
    if (static_cast<std::size_t>(v.size()) != shape.product())
        throw DimensionError("vector length " + std::to_string(v.size()) +
                             " does not equal shape product " + std::to_string(shape.product()));
    return DenseTensor{shape.factors(), std::vector<double>(v.data(), v.data() + v.size())};
}

DataMatrix tensor_as_matrix(const DenseTensor &t) {
    if (t.order() < 2)
        throw DimensionError("tensor must have order >= 2 to flatten into a matrix");
    const std::size_t rows = t.dims.front();
    return DataMatrix(rows, t.size() / rows, t.data);
}

} // namespace ttad
