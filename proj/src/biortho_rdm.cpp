#include "ladder/biortho_rdm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ladder {

int ReducedDensityMatrix::num_rungs() const {
    int n = 0;
    while ((Eigen::Index{1} << n) < matrix.dim())
        ++n;
    return n;
}

ReducedDensityMatrix partial_trace_leg_b(const Eigen::VectorXcd& right, const Eigen::RowVectorXcd& left, int num_rungs) {
    if (num_rungs < 1 || num_rungs > kMaxRungs)
        throw std::invalid_argument("num_rungs out of range: " + std::to_string(num_rungs));
    const Eigen::Index leg_dim = Eigen::Index{1} << num_rungs;
    if (right.size() != leg_dim * leg_dim || left.size() != leg_dim * leg_dim)
        throw std::invalid_argument("vectors must have length 4^N");

    const cplx overlap = left * right;
    if (std::abs(overlap - 1.0) > kBiorthoNormTolerance)
        throw std::invalid_argument("left/right ground states are not biorthonormal (overlap " +
                                    std::to_string(overlap.real()) + " + " + std::to_string(overlap.imag()) +
                                    "i); renormalize by the overlap first");

    // Column-major reshape: entry (a, b) of the view is component b * 2^N + a.
    const Eigen::Map<const Eigen::MatrixXcd> r(right.data(), leg_dim, leg_dim);
    const Eigen::Map<const Eigen::MatrixXcd> l(left.data(), leg_dim, leg_dim);
    ReducedDensityMatrix rdm;
    rdm.matrix.matrix = r * l.transpose();
    rdm.matrix.space = OperatorSpace::LegOnly;
    rdm.trace_residual = std::abs(rdm.matrix.matrix.trace() - 1.0);
    return rdm;
}

Eigen::VectorXcd embed_full(const Eigen::VectorXcd& sector_vector, const SectorBasis& sector) {
    if (sector.kind() != BasisKind::Ladder)
        throw std::invalid_argument("embedding needs a ladder sector basis");
    if (static_cast<std::size_t>(sector_vector.size()) != sector.size())
        throw std::invalid_argument("vector length does not match the sector dimension");
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * sector.num_rungs()));
    for (std::size_t i = 0; i < sector.size(); ++i)
        full(static_cast<Eigen::Index>(sector.state(i))) = sector_vector(static_cast<Eigen::Index>(i));
    return full;
}

ReducedDensityMatrix biorthogonal_rdm(const Eigen::VectorXcd& right, const Eigen::RowVectorXcd& left,
                                      const SectorBasis& sector) {
    const Eigen::RowVectorXcd left_full = embed_full(left.transpose(), sector).transpose();
    return partial_trace_leg_b(embed_full(right, sector), left_full, sector.num_rungs());
}

Eigen::MatrixXcd leg_translation(int num_rungs) {
    const Eigen::Index dim = Eigen::Index{1} << num_rungs;
    const SpinConfig mask = static_cast<SpinConfig>(dim - 1);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const auto c = static_cast<SpinConfig>(a);
        const SpinConfig shifted = ((c << 1) | (c >> (num_rungs - 1))) & mask;
        t(static_cast<Eigen::Index>(shifted), a) = 1.0;
    }
    return t;
}

}  // namespace ladder
