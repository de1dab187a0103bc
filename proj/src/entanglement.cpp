#include "ladder/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "ladder/biortho_eig.hpp"

namespace ladder {

namespace {

constexpr double kZeroOmega = 1e-300;
constexpr double kSentinelCoefficient = 1e-14;

bool omega_order(const cplx& a, const cplx& b) {
    if (std::abs(a) != std::abs(b))
        return std::abs(a) > std::abs(b);
    if (a.real() != b.real())
        return a.real() > b.real();
    return a.imag() < b.imag();
}

}  // namespace

double leading_ln_z(int num_rungs) { return num_rungs * std::numbers::ln2; }

EntanglementSpectrum make_entanglement_spectrum(std::vector<cplx> omegas, double ln_z) {
    std::stable_sort(omegas.begin(), omegas.end(), omega_order);
    EntanglementSpectrum spec;
    spec.ln_z = ln_z;
    spec.xi_real.reserve(omegas.size());
    for (const cplx& w : omegas) {
        spec.im_max = std::max(spec.im_max, std::abs(w.imag()));
        if (std::abs(w) < kZeroOmega) {
            spec.has_zero = true;
            spec.xi_real.push_back(INFINITY);
        } else {
            spec.xi_real.push_back(-std::log(std::abs(w)) - ln_z);
        }
    }
    spec.omegas = std::move(omegas);
    return spec;
}

EntanglementSpectrum entanglement_spectrum(const ReducedDensityMatrix& rdm) {
    const EigenSystem sys = eig_biorthogonal(rdm.matrix);
    if (sys.defective)
        throw std::domain_error("reduced density matrix is defective (condition " + std::to_string(sys.condition) + ")");
    std::vector<cplx> omegas;
    omegas.reserve(sys.pairs.size());
    for (const auto& p : sys.pairs)
        omegas.push_back(p.eigenvalue);
    return make_entanglement_spectrum(std::move(omegas), leading_ln_z(rdm.num_rungs()));
}

EntropyReport ttc_entropies(const EntanglementSpectrum& spectrum, std::span<const double> orders) {
    EntropyReport report;
    for (const cplx& w : spectrum.omegas) {
        const double mag = std::abs(w);
        if (mag >= kZeroOmega)
            report.s_ttc -= w * std::log(mag);
    }
    for (double n : orders) {
        if (!std::isfinite(n) || n == 1.0)
            throw std::invalid_argument("Renyi order must be finite and different from 1");
        cplx sum = 0.0;
        for (const cplx& w : spectrum.omegas) {
            const double mag = std::abs(w);
            if (mag < kZeroOmega) {
                if (n < 1.0)
                    report.dropped_zero = true;
                continue;
            }
            sum += w * std::pow(mag, n - 1.0);
        }
        report.renyi[n] = std::log(sum) / (1.0 - n);
    }
    return report;
}

EntanglementHamiltonian entanglement_hamiltonian(const ReducedDensityMatrix& rdm) {
    const EigenSystem sys = eig_biorthogonal(rdm.matrix);
    if (sys.defective)
        throw std::domain_error("cannot take the logarithm of a defective reduced density matrix");

    const int n = rdm.num_rungs();
    const double ln_z = leading_ln_z(n);
    EntanglementHamiltonian he;
    Eigen::VectorXcd xi(sys.dim());
    for (Eigen::Index k = 0; k < sys.dim(); ++k) {
        const cplx w = sys.pairs[static_cast<std::size_t>(k)].eigenvalue;
        if (std::abs(w) < kZeroOmega)
            throw std::domain_error("reduced density matrix has a zero eigenvalue");
        const cplx log_w = std::log(w);
        if (std::numbers::pi - std::abs(log_w.imag()) < 0.1)
            he.branch_note = true;
        xi(k) = -(log_w + ln_z);
    }
    he.matrix.matrix = sys.right_matrix() * xi.asDiagonal() * sys.left_matrix();
    he.matrix.space = OperatorSpace::LegOnly;

    const Eigen::MatrixXcd minus_he = -he.matrix.matrix;
    const Eigen::MatrixXcd rebuilt = minus_he.exp() * std::exp(-ln_z);
    he.reconstruction_residual = (rebuilt - rdm.matrix.matrix).norm() / rdm.matrix.matrix.norm();
    return he;
}

XxzTemplate xxz_template(int num_rungs, Boundary boundary) {
    const SectorBasis leg = enumerate_leg(num_rungs);
    const auto dim = static_cast<Eigen::Index>(leg.size());
    XxzTemplate t{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
    const int bonds = boundary == Boundary::Periodic ? num_rungs : num_rungs - 1;
    for (int j = 0; j < bonds; ++j) {
        const int k = (j + 1) % num_rungs;
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto c = static_cast<SpinConfig>(col);
            if (auto r = apply_bond(c, BondOp::PlusMinus, j, k))
                t.plus_minus(static_cast<Eigen::Index>(r->config), col) += r->amplitude;
            if (auto r = apply_bond(c, BondOp::MinusPlus, j, k))
                t.minus_plus(static_cast<Eigen::Index>(r->config), col) += r->amplitude;
            t.zz(col, col) += apply_bond(c, BondOp::ZZ, j, k)->amplitude;
        }
    }
    return t;
}

EffectiveModelFit fit_effective_model(const Eigen::MatrixXcd& he, const LadderParams& params) {
    const int n = params.num_rungs;
    if (n < 2 || he.rows() != (Eigen::Index{1} << n) || he.cols() != he.rows())
        throw std::invalid_argument("entanglement Hamiltonian must act on the 2^N leg space with N >= 2");

    const XxzTemplate t = xxz_template(n, params.boundary);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(he.rows(), he.cols());
    const std::array<const Eigen::MatrixXcd*, 4> basis{&id, &t.plus_minus, &t.minus_plus, &t.zz};

    // Tr[X^dag Y] is the Frobenius inner product of the entries.
    auto inner = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) { return (x.conjugate().cwiseProduct(y)).sum(); };
    Eigen::Matrix4cd gram;
    Eigen::Vector4cd rhs;
    for (int i = 0; i < 4; ++i) {
        rhs(i) = inner(*basis[i], he);
        for (int j = 0; j < 4; ++j)
            gram(i, j) = inner(*basis[i], *basis[j]);
    }
    const Eigen::Vector4cd c = gram.completeOrthogonalDecomposition().solve(rhs);

    EffectiveModelFit fit;
    fit.coeff_id = c(0);
    fit.coeff_pm = c(1);
    fit.coeff_mp = c(2);
    fit.coeff_zz = c(3);

    Eigen::MatrixXcd remainder = he;
    for (int i = 0; i < 4; ++i)
        remainder -= c(i) * *basis[i];
    const double he_norm = he.norm();
    fit.residual_norm = remainder.norm();
    fit.residual = he_norm > 0 ? fit.residual_norm / he_norm : 0.0;

    if (std::abs(fit.coeff_pm) >= kSentinelCoefficient && std::abs(fit.coeff_mp) >= kSentinelCoefficient &&
        params.j_leg != 0.0) {
        const cplx root = std::sqrt(fit.coeff_pm * fit.coeff_mp);
        fit.beta_fit = 2.0 * root / params.j_leg;
        fit.psi_fit = 0.5 * std::log(fit.coeff_pm / fit.coeff_mp);
        fit.delta_tilde_fit = fit.coeff_zz / (2.0 * root);
    }
    return fit;
}

EffectiveModelFit fit_effective_model(const EntanglementHamiltonian& he, const LadderParams& params) {
    return fit_effective_model(he.matrix.matrix, params);
}

PredictedParameters predicted_effective_parameters(const LadderParams& params) {
    if (params.j_rung == 0.0)
        throw std::invalid_argument("effective temperature needs J_rung != 0");
    if (!(params.delta > -1.0))
        throw std::invalid_argument("effective temperature needs Delta > -1");
    const double rung_anisotropy = params.rung_type == RungType::XXZNonreciprocal ? params.delta : 1.0;
    return {4.0 / ((1.0 + rung_anisotropy) * params.j_rung), 0.5 * params.delta * (1.0 + rung_anisotropy)};
}

}  // namespace ladder
