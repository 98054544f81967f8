#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ttad/svd_engine.hpp"
#include "ttad/tensor_core.hpp"

namespace ttad {

/**
 * One TT core with dims (left bond, physical, right bond), stored as its left
 * unfolding: a row-major ((left * physical) x right) matrix. The first core of a
 * chain has left == 1 and the last has right == 1.
 */
class TTCore {
public:
    TTCore(std::size_t left, std::size_t physical, std::size_t right, RowMatrix unfolding);

    std::size_t left() const noexcept { return left_; }
    std::size_t physical() const noexcept { return physical_; }
    std::size_t right() const noexcept { return right_; }
    const RowMatrix &unfolding() const noexcept { return unfolding_; }
    double operator()(std::size_t l, std::size_t p, std::size_t r) const {
        return unfolding_(l * physical_ + p, r);
    }

    /// Max |U^T U - I| of the left unfolding.
    double isometry_defect() const;

private:
    std::size_t left_;
    std::size_t physical_;
    std::size_t right_;
    RowMatrix unfolding_;
};

/// Ordered chain of TT cores with matching bonds.
class TTChain {
public:
    /// Validates boundary bonds and adjacent bond agreement; throws StructuralError.
    explicit TTChain(std::vector<TTCore> cores);

    std::size_t order() const noexcept { return cores_.size(); }
    const std::vector<TTCore> &cores() const noexcept { return cores_; }
    const TTCore &core(std::size_t i) const { return cores_.at(i); }

    std::vector<std::size_t> physical_dims() const;
    /// b_1 .. b_{n-1}
    std::vector<std::size_t> bond_dims() const;

private:
    std::vector<TTCore> cores_;
};

/// Sequential truncated-SVD decomposition. Cores 1..n-1 come out left-isometric.
TTChain tt_decompose(const DenseTensor &t, const TruncationPolicy &policy);

/// Dense tensor of the chain, contracted left to right.
DenseTensor tt_contract(const TTChain &chain);

/// Contracts a chain whose first physical index is the data-row axis into an N x M' matrix.
DataMatrix contract_to_matrix(const TTChain &chain);

// Text container: magic line, order, physical dims, bond dims, then every
// core's values in row-major (left, physical, right) order, shortest round-trip form.
void write_chain(std::ostream &out, std::span<const TTCore> cores);
std::vector<TTCore> read_cores(std::istream &in);
void save_chain(const std::filesystem::path &path, const TTChain &chain);
TTChain load_chain(const std::filesystem::path &path);

} // namespace ttad
