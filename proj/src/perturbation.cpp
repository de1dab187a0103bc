#include "ladder/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace ladder {

namespace {

constexpr int kUpUp = 0;
constexpr int kUpDown = 1;
constexpr int kDownUp = 2;
constexpr int kDownDown = 3;

void require_xxz_rung(const LadderParams& params) {
    params.validate();
    if (params.rung_type != RungType::XXZNonreciprocal)
        throw std::invalid_argument("perturbative oracle covers the nonreciprocal XXZ rung only");
    if (params.j_rung == 0.0)
        throw std::invalid_argument("perturbative oracle needs J_rung != 0");
}

// Number of nearest-neighbour bonds (j, j+1 mod N) on one leg.
int bond_count(const LadderParams& p) { return p.boundary == Boundary::Periodic ? p.num_rungs : p.num_rungs - 1; }

}  // namespace

RungBasis rung_eigenstates(double phi, Side side) {
    const double w = std::exp(side_sign(side) * phi);
    const double s = 1.0 / std::numbers::sqrt2;
    RungBasis b{side, phi, Eigen::Vector4cd::Zero(), Eigen::Vector4cd::Zero(), Eigen::Vector4cd::Zero(),
                Eigen::Vector4cd::Zero()};
    b.singlet(kUpDown) = s * w;
    b.singlet(kDownUp) = -s;
    b.t_zero(kUpDown) = s * w;
    b.t_zero(kDownUp) = s;
    b.t_plus(kUpUp) = 1.0;
    b.t_minus(kDownDown) = 1.0;
    return b;
}

UnperturbedEnergies unperturbed_energies(const LadderParams& params) {
    require_xxz_rung(params);
    const double per_rung = 0.5 + 0.25 * params.delta;
    const double n = params.num_rungs;
    return {-n * params.j_rung * per_rung, params.j_rung * ((1.0 + params.delta) - n * per_rung),
            params.j_rung * (2.0 - n * per_rung)};
}

Eigen::VectorXcd rung_product_state(const std::vector<Eigen::Vector4cd>& rungs) {
    const int n = static_cast<int>(rungs.size());
    if (n < 1 || n > kMaxRungs)
        throw std::invalid_argument("rung count out of range");
    const Eigen::Index dim = Eigen::Index{1} << (2 * n);
    Eigen::VectorXcd out(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        cplx amp = 1.0;
        for (int j = 0; j < n && amp != 0.0; ++j) {
            const bool up_a = (idx >> j) & 1;
            const bool up_b = (idx >> (n + j)) & 1;
            const int local = up_a ? (up_b ? kUpUp : kUpDown) : (up_b ? kDownUp : kDownDown);
            amp *= rungs[static_cast<std::size_t>(j)](local);
        }
        out(idx) = amp;
    }
    return out;
}

PerturbativeState zeroth_order_state(const LadderParams& params, Side side) {
    require_xxz_rung(params);
    const RungBasis b = rung_eigenstates(params.phi, side);
    return {side, 0, rung_product_state(std::vector<Eigen::Vector4cd>(static_cast<std::size_t>(params.num_rungs), b.singlet))};
}

PerturbativeState first_order_state(const LadderParams& params, Side side) {
    require_xxz_rung(params);
    if (params.delta == -1.0)
        throw std::invalid_argument("first-order correction diverges at Delta = -1");

    const int n = params.num_rungs;
    const RungBasis b = rung_eigenstates(params.phi, side);
    const double sigma = side_sign(side);
    // Right: 2 e^{Phi} e^{+-Psi} / (1+Delta); left: 2 e^{-Phi} e^{-+Psi} / (1+Delta).
    const double plus_minus = 2.0 * std::exp(sigma * params.phi) * std::exp(sigma * params.psi) / (1.0 + params.delta);
    const double minus_plus = 2.0 * std::exp(sigma * params.phi) * std::exp(-sigma * params.psi) / (1.0 + params.delta);
    const double prefactor = params.j_leg / (4.0 * params.j_rung);

    Eigen::VectorXcd correction = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n));
    std::vector<Eigen::Vector4cd> rungs(static_cast<std::size_t>(n), b.singlet);
    auto excite = [&](int j, const Eigen::Vector4cd& first, const Eigen::Vector4cd& second, double weight) {
        const auto k = static_cast<std::size_t>((j + 1) % n);
        const auto jj = static_cast<std::size_t>(j);
        rungs[jj] = first;
        rungs[k] = second;
        correction += (prefactor * weight) * rung_product_state(rungs);
        rungs[jj] = b.singlet;
        rungs[k] = b.singlet;
    };
    for (int j = 0; j < bond_count(params); ++j) {
        excite(j, b.t_plus, b.t_minus, plus_minus);
        excite(j, b.t_minus, b.t_plus, minus_plus);
        excite(j, b.t_zero, b.t_zero, -params.delta);
    }
    return {side, 1, std::move(correction)};
}

Eigen::MatrixXcd leg_site_operator(const Eigen::Matrix2cd& local, int site, int num_rungs) {
    // Kronecker order puts the left factor on the higher bits.
    const Eigen::MatrixXcd high = Eigen::MatrixXcd::Identity(Eigen::Index{1} << (num_rungs - 1 - site),
                                                             Eigen::Index{1} << (num_rungs - 1 - site));
    const Eigen::MatrixXcd low = Eigen::MatrixXcd::Identity(Eigen::Index{1} << site, Eigen::Index{1} << site);
    const Eigen::MatrixXcd upper = Eigen::kroneckerProduct(high, local);
    return Eigen::kroneckerProduct(upper, low);
}

ReducedDensityMatrix perturbative_rdm(const LadderParams& params) {
    require_xxz_rung(params);
    if (!(params.delta > -1.0))
        throw std::invalid_argument("perturbative RDM needs Delta > -1");

    // Local basis {|dn>, |up>} so that bit 1 == up.
    Eigen::Matrix2cd s_plus;
    s_plus << 0, 0, 1, 0;
    const Eigen::Matrix2cd s_minus = s_plus.transpose();
    Eigen::Matrix2cd s_z;
    s_z << -0.5, 0, 0, 0.5;

    const int n = params.num_rungs;
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd bracket = Eigen::MatrixXcd::Zero(dim, dim);
    const double zz = 0.5 * (params.delta + params.delta * params.delta);
    for (int j = 0; j < bond_count(params); ++j) {
        const int k = (j + 1) % n;
        bracket += 0.5 * (std::exp(params.psi) * leg_site_operator(s_plus, j, n) * leg_site_operator(s_minus, k, n) +
                          std::exp(-params.psi) * leg_site_operator(s_minus, j, n) * leg_site_operator(s_plus, k, n));
        bracket += zz * leg_site_operator(s_z, j, n) * leg_site_operator(s_z, k, n);
    }
    const double strength = 4.0 * params.j_leg / (params.j_rung * (1.0 + params.delta));

    ReducedDensityMatrix rdm;
    rdm.matrix.matrix = (Eigen::MatrixXcd::Identity(dim, dim) - strength * bracket) / static_cast<double>(dim);
    rdm.matrix.space = OperatorSpace::LegOnly;
    rdm.trace_residual = std::abs(rdm.matrix.matrix.trace() - 1.0);
    rdm.source_params = params;
    return rdm;
}

}  // namespace ladder
