#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ladder/biortho_rdm.hpp"

namespace ladder {

struct EntanglementSpectrum {
    std::vector<cplx> omegas;     // descending |omega|
    std::vector<double> xi_real;  // -ln|omega| - ln Z; +inf where |omega| < 1e-300
    double ln_z = 0.0;
    double im_max = 0.0;  // max |Im omega|
    bool has_zero = false;
};

// ln Z = N ln 2, the leading-order partition function of a maximally entangled leg.
double leading_ln_z(int num_rungs);

EntanglementSpectrum make_entanglement_spectrum(std::vector<cplx> omegas, double ln_z);

// Eigenvalues of rho_A through eig_biorthogonal. Throws std::domain_error on a defective rho_A.
EntanglementSpectrum entanglement_spectrum(const ReducedDensityMatrix& rdm);

struct EntropyReport {
    cplx s_ttc;                  // -sum omega ln|omega|
    std::map<double, cplx> renyi;  // order n -> ln(sum omega |omega|^(n-1)) / (1-n)
    bool dropped_zero = false;   // a zero omega was dropped from some Renyi sum with n < 1
};

// Entropies for complex omega. Orders must be finite and different from 1.
EntropyReport ttc_entropies(const EntanglementSpectrum& spectrum, std::span<const double> orders);

struct EntanglementHamiltonian {
    ComplexOperator matrix;
    bool branch_note = false;  // some Im Log(omega) lies within 0.1 of +-pi
    double reconstruction_residual = 0.0;  // |exp(-H_E)/Z - rho|_F / |rho|_F
};

/// H_E = -W diag(Log omega_i + ln Z) W^-1 with the principal logarithm and
/// ln Z = N ln 2, so that rho_A = exp(-H_E) / 2^N.
///
/// The reconstruction residual is measured with a Pade matrix exponential,
/// independent of the eigenbasis used to build H_E. Throws std::domain_error
/// if rho_A is defective or has a zero eigenvalue.
EntanglementHamiltonian entanglement_hamiltonian(const ReducedDensityMatrix& rdm);

// Nearest-neighbour strings on the leg space with bonds per `boundary`.
struct XxzTemplate {
    Eigen::MatrixXcd plus_minus;   // sum_j S+_j S-_{j+1}
    Eigen::MatrixXcd minus_plus;   // sum_j S-_j S+_{j+1}
    Eigen::MatrixXcd zz;           // sum_j Sz_j Sz_{j+1}
};
XxzTemplate xxz_template(int num_rungs, Boundary boundary);

struct EffectiveModelFit {
    cplx coeff_id;
    cplx coeff_pm;  // a
    cplx coeff_mp;  // b
    cplx coeff_zz;  // d
    // nullopt when |a| or |b| < 1e-14 (or J_leg == 0)
    std::optional<cplx> beta_fit;         // 2 sqrt(ab) / J_leg
    std::optional<cplx> psi_fit;          // ln(a/b) / 2
    std::optional<cplx> delta_tilde_fit;  // d / (2 sqrt(ab))
    double residual = 0.0;       // |H_E - fit|_F / |H_E|_F, 0 for H_E = 0
    double residual_norm = 0.0;  // |H_E - fit|_F
};

// Orthogonal projection of H_E onto span{I, pm, mp, zz} under Tr[X^dag Y].
// The normal equations are solved with a rank-revealing factorization, so
// the N = 2 periodic case (where pm and mp coincide) splits a and b evenly.
EffectiveModelFit fit_effective_model(const Eigen::MatrixXcd& he, const LadderParams& params);
EffectiveModelFit fit_effective_model(const EntanglementHamiltonian& he, const LadderParams& params);

struct PredictedParameters {
    double beta;
    double delta_tilde;
};

// beta = 4 / ((1 + Delta) J_rung), delta_tilde = (Delta + Delta^2) / 2 for the
// nonreciprocal XXZ rung. For the isotropic Heisenberg rung (rung anisotropy 1)
// the same first-order argument gives beta = 2 / J_rung and delta_tilde = Delta.
PredictedParameters predicted_effective_parameters(const LadderParams& params);

}  // namespace ladder
