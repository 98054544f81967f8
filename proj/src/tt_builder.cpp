#include "ttad/tt_builder.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ttad/errors.hpp"

namespace ttad {

namespace {

constexpr const char *kChainMagic = "TTAD-CHAIN v1";

using ColMatrix = Eigen::MatrixXd;

} // namespace

TTCore::TTCore(std::size_t left, std::size_t physical, std::size_t right, RowMatrix unfolding)
    : left_(left), physical_(physical), right_(right), unfolding_(std::move(unfolding)) {
    if (left_ == 0 || physical_ == 0 || right_ == 0)
        throw StructuralError("TT core dimensions must be positive");
    if (static_cast<std::size_t>(unfolding_.rows()) != left_ * physical_ ||
        static_cast<std::size_t>(unfolding_.cols()) != right_)
        throw StructuralError("TT core unfolding is " + std::to_string(unfolding_.rows()) + " x " +
                              std::to_string(unfolding_.cols()) + ", expected " +
                              std::to_string(left_ * physical_) + " x " + std::to_string(right_));
}

double TTCore::isometry_defect() const {
    const ColMatrix gram = unfolding_.transpose() * unfolding_;
    return (gram - ColMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

TTChain::TTChain(std::vector<TTCore> cores) : cores_(std::move(cores)) {
    if (cores_.empty())
        throw StructuralError("TT chain must have at least one core");
    if (cores_.front().left() != 1)
        throw StructuralError("first core must have left bond 1");
    if (cores_.back().right() != 1)
        throw StructuralError("last core must have right bond 1");
    for (std::size_t i = 1; i < cores_.size(); ++i)
        if (cores_[i - 1].right() != cores_[i].left())
            throw StructuralError("bond mismatch between cores " + std::to_string(i) + " and " +
                                  std::to_string(i + 1) + ": " +
                                  std::to_string(cores_[i - 1].right()) + " vs " +
                                  std::to_string(cores_[i].left()));
}

std::vector<std::size_t> TTChain::physical_dims() const {
    std::vector<std::size_t> out;
    out.reserve(cores_.size());
    for (const auto &c : cores_)
        out.push_back(c.physical());
    return out;
}

std::vector<std::size_t> TTChain::bond_dims() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < cores_.size(); ++i)
        out.push_back(cores_[i].right());
    return out;
}

TTChain tt_decompose(const DenseTensor &t, const TruncationPolicy &policy) {
    const std::size_t n = t.order();
    if (n < 2)
        throw DimensionError("TT decomposition needs a tensor of order >= 2");
    if (t.size() == 0)
        throw DimensionError("TT decomposition of an empty tensor");

    std::vector<TTCore> cores;
    cores.reserve(n);

    // Remainder carried between steps, row-major (bond x remaining physical indices).
    std::size_t bond = 1;
    std::size_t remaining = t.size();
    RowMatrix remainder = Eigen::Map<const RowMatrix>(t.data.data(), 1,
                                                      static_cast<Eigen::Index>(remaining));

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t phys = t.dims[i];
        remaining /= phys;
        // Group (bond, physical_i) as rows, the rest as columns. Row-major reshape is free.
        const Eigen::Map<const RowMatrix> unfolding(remainder.data(),
                                                    static_cast<Eigen::Index>(bond * phys),
                                                    static_cast<Eigen::Index>(remaining));
        const TruncatedSvd svd = truncated_svd(unfolding, policy.tau_for_step(i + 1));
        const std::size_t rank = svd.rank();
        cores.emplace_back(bond, phys, rank, RowMatrix(svd.u));
        remainder = svd.singulars.asDiagonal() * svd.v;
        bond = rank;
    }
    cores.emplace_back(bond, t.dims[n - 1], 1,
                       Eigen::Map<const RowMatrix>(remainder.data(),
                                                   static_cast<Eigen::Index>(bond * t.dims[n - 1]),
                                                   1));
    return TTChain(std::move(cores));
}

DenseTensor tt_contract(const TTChain &chain) {
    // acc is (product of physical dims so far) x (current bond).
    RowMatrix acc = RowMatrix::Ones(1, 1);
    DenseTensor out;
    for (const auto &core : chain.cores()) {
        if (static_cast<std::size_t>(acc.cols()) != core.left())
            throw StructuralError("bond mismatch during contraction");
        const Eigen::Map<const RowMatrix> wide(core.unfolding().data(),
                                               static_cast<Eigen::Index>(core.left()),
                                               static_cast<Eigen::Index>(core.physical() *
                                                                         core.right()));
        RowMatrix next = acc * wide;
        acc = Eigen::Map<const RowMatrix>(next.data(),
                                          next.rows() * static_cast<Eigen::Index>(core.physical()),
                                          static_cast<Eigen::Index>(core.right()));
        out.dims.push_back(core.physical());
    }
    out.data.assign(acc.data(), acc.data() + acc.size());
    return out;
}

DataMatrix contract_to_matrix(const TTChain &chain) {
    if (chain.order() < 2)
        throw StructuralError("chain needs a data-row core and at least one feature core");
    return tensor_as_matrix(tt_contract(chain));
}

void write_chain(std::ostream &out, std::span<const TTCore> cores) {
    out << kChainMagic << '\n' << cores.size() << '\n';
    for (std::size_t i = 0; i < cores.size(); ++i)
        out << (i ? " " : "") << cores[i].physical();
    out << '\n';
    for (std::size_t i = 0; i <= cores.size(); ++i) {
        const std::size_t b = i == 0 ? cores.front().left()
                              : i == cores.size() ? cores.back().right()
                                                  : cores[i].left();
        out << (i ? " " : "") << b;
    }
    out << '\n';
    std::array<char, 64> buf{};
    for (const auto &core : cores) {
        const auto &u = core.unfolding();
        for (Eigen::Index k = 0; k < u.size(); ++k) {
            auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), u.data()[k]);
            out.write(buf.data(), end - buf.data());
            out << (k + 1 == u.size() ? '\n' : ' ');
        }
    }
    if (!out)
        throw IoError("failed writing TT chain");
}

std::vector<TTCore> read_cores(std::istream &in) {
    std::string magic;
    std::getline(in, magic);
    if (magic != kChainMagic)
        throw ParseError("not a TT chain file (bad magic '" + magic + "')");
    std::size_t n = 0;
    if (!(in >> n) || n == 0)
        throw ParseError("TT chain file: bad core count");
    std::vector<std::size_t> phys(n), bonds(n + 1);
    for (auto &p : phys)
        if (!(in >> p))
            throw ParseError("TT chain file: bad physical dims");
    for (auto &b : bonds)
        if (!(in >> b))
            throw ParseError("TT chain file: bad bond dims");
    std::vector<TTCore> cores;
    cores.reserve(n);
    std::string token;
    for (std::size_t i = 0; i < n; ++i) {
        RowMatrix u(static_cast<Eigen::Index>(bonds[i] * phys[i]),
                    static_cast<Eigen::Index>(bonds[i + 1]));
        for (Eigen::Index k = 0; k < u.size(); ++k) {
            if (!(in >> token))
                throw ParseError("TT chain file: truncated data in core " + std::to_string(i + 1));
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || ptr != token.data() + token.size())
                throw ParseError("TT chain file: bad value '" + token + "'");
            u.data()[k] = v;
        }
        cores.emplace_back(bonds[i], phys[i], bonds[i + 1], std::move(u));
    }
    return cores;
}

void save_chain(const std::filesystem::path &path, const TTChain &chain) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_chain(out, chain.cores());
}

TTChain load_chain(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    return TTChain(read_cores(in));
}

} // namespace ttad
