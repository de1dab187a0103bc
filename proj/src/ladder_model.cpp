#include "ladder/ladder_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladder/biortho_eig.hpp"

namespace ladder {

void LadderParams::validate() const {
    if (num_rungs < 2 || num_rungs > kMaxRungs)
        throw std::invalid_argument("num_rungs must lie in [2, " + std::to_string(kMaxRungs) + "], got " +
                                    std::to_string(num_rungs));
    for (double v : {j_leg, j_rung, delta, phi, psi})
        if (!std::isfinite(v))
            throw std::invalid_argument("model parameters must be finite");
    if (!(delta > -1.0))
        throw std::invalid_argument("Delta must exceed -1, got " + std::to_string(delta));
}

namespace {

// One nearest-neighbour XXZ bond: coupling * [(fwd S+_1 S-_2 + bwd S-_1 S+_2)/2 + zz Sz_1 Sz_2].
struct Bond {
    int bit1;
    int bit2;
    double coupling;
    double forward;
    double backward;
    double zz;
};

void append_leg_bonds(std::vector<Bond>& bonds, const LadderParams& p, int offset, double delta) {
    const int n = p.num_rungs;
    const int count = p.boundary == Boundary::Periodic ? n : n - 1;
    for (int j = 0; j < count; ++j)
        bonds.push_back({offset + j, offset + (j + 1) % n, p.j_leg, std::exp(p.psi), std::exp(-p.psi), delta});
}

void append_rung_bonds(std::vector<Bond>& bonds, const LadderParams& p) {
    const int n = p.num_rungs;
    for (int j = 0; j < n; ++j) {
        const SiteIndex a{j, Leg::A};
        const SiteIndex b{j, Leg::B};
        if (p.rung_type == RungType::XXZNonreciprocal)
            bonds.push_back({bit_position(a, n), bit_position(b, n), p.j_rung, std::exp(p.phi), std::exp(-p.phi), p.delta});
        else
            bonds.push_back({bit_position(a, n), bit_position(b, n), p.j_rung, 1.0, 1.0, 1.0});
    }
}

Eigen::MatrixXcd assemble(const std::vector<Bond>& bonds, const SectorBasis& basis) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const Bond& bond : bonds) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            const SpinConfig c = basis.state(static_cast<std::size_t>(col));
            if (auto r = apply_bond(c, BondOp::PlusMinus, bond.bit1, bond.bit2)) {
                const auto row = static_cast<Eigen::Index>(*basis.position(r->config));
                h(row, col) += bond.coupling * 0.5 * bond.forward * r->amplitude;
            }
            if (auto r = apply_bond(c, BondOp::MinusPlus, bond.bit1, bond.bit2)) {
                const auto row = static_cast<Eigen::Index>(*basis.position(r->config));
                h(row, col) += bond.coupling * 0.5 * bond.backward * r->amplitude;
            }
            if (auto r = apply_bond(c, BondOp::ZZ, bond.bit1, bond.bit2))
                h(col, col) += bond.coupling * bond.zz * r->amplitude;
        }
    }
    return h;
}

}  // namespace

ComplexOperator build_hamiltonian(const LadderParams& params, const SectorBasis& sector, HamiltonianPart part) {
    params.validate();
    if (sector.kind() != BasisKind::Ladder || sector.num_rungs() != params.num_rungs)
        throw std::invalid_argument("ladder sector does not match num_rungs = " + std::to_string(params.num_rungs));

    std::vector<Bond> bonds;
    if (part == HamiltonianPart::Total || part == HamiltonianPart::LegA)
        append_leg_bonds(bonds, params, 0, params.delta);
    if (part == HamiltonianPart::Total || part == HamiltonianPart::LegB)
        append_leg_bonds(bonds, params, params.num_rungs, params.delta);
    if (part == HamiltonianPart::Total || part == HamiltonianPart::Rung)
        append_rung_bonds(bonds, params);

    ComplexOperator op{assemble(bonds, sector), std::nullopt, OperatorSpace::FullLadder};
    if (auto tag = sector.two_sz())
        op.sector = SectorTag{sector.num_rungs(), *tag};
    return op;
}

ComplexOperator build_subsystem_hamiltonian(const LadderParams& params, double delta_override, const SectorBasis& leg) {
    params.validate();
    if (leg.kind() != BasisKind::Leg || leg.num_rungs() != params.num_rungs)
        throw std::invalid_argument("leg basis does not match num_rungs = " + std::to_string(params.num_rungs));
    if (!std::isfinite(delta_override))
        throw std::invalid_argument("anisotropy must be finite");

    std::vector<Bond> bonds;
    append_leg_bonds(bonds, params, 0, delta_override);
    ComplexOperator op{assemble(bonds, leg), std::nullopt, OperatorSpace::LegOnly};
    if (auto tag = leg.two_sz())
        op.sector = SectorTag{leg.num_rungs(), *tag};
    return op;
}

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty())
        return a.size() == b.size() ? 0.0 : INFINITY;
    auto directed = [](std::span<const cplx> from, std::span<const cplx> to) {
        double worst = 0.0;
        for (const cplx& x : from) {
            double best = INFINITY;
            for (const cplx& y : to)
                best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double spectrum_gauge_check(const LadderParams& params, const SectorBasis& sector, std::span<const double> phi_values) {
    if (phi_values.size() < 2)
        throw std::invalid_argument("gauge check needs at least two Phi values");

    auto eigenvalues_at = [&](double phi) {
        LadderParams p = params;
        p.phi = phi;
        return eigenvalues(build_hamiltonian(p, sector, HamiltonianPart::Total).matrix);
    };

    const std::vector<cplx> reference = eigenvalues_at(0.0);
    double worst = 0.0;
    for (double phi : phi_values) {
        if (phi == 0.0)
            continue;
        worst = std::max(worst, hausdorff_distance(eigenvalues_at(phi), reference));
    }
    return worst;
}

}  // namespace ladder
