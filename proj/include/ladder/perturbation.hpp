#pragma once

#include <array>

#include <Eigen/Dense>

#include "ladder/biortho_rdm.hpp"

namespace ladder {

enum class Side { L, R };

// sigma(R) = +1, sigma(L) = -1.
constexpr double side_sign(Side side) { return side == Side::R ? 1.0 : -1.0; }

// Single-rung states over {|up up>, |up dn>, |dn up>, |dn dn>} with the
// first arrow on leg A.
struct RungBasis {
    Side side;
    double phi;
    Eigen::Vector4cd singlet;   // (e^{sigma Phi}|ud> - |du>)/sqrt2
    Eigen::Vector4cd t_plus;    // |uu>
    Eigen::Vector4cd t_zero;    // (e^{sigma Phi}|ud> + |du>)/sqrt2
    Eigen::Vector4cd t_minus;   // |dd>
};

RungBasis rung_eigenstates(double phi, Side side);

struct UnperturbedEnergies {
    double e0;   // all rung singlets
    double e12;  // one t+ t- (or t- t+) pair on neighbouring rungs
    double e3;   // one t0 t0 pair
};

UnperturbedEnergies unperturbed_energies(const LadderParams& params);

struct PerturbativeState {
    Side side;
    int order;
    Eigen::VectorXcd vector;  // full 4^N space, index b 2^N + a; components of the bra for Side::L
};

// Tensor product of one 4-component rung vector per rung.
Eigen::VectorXcd rung_product_state(const std::vector<Eigen::Vector4cd>& rungs);

// Product of rung singlets of the given side.
PerturbativeState zeroth_order_state(const LadderParams& params, Side side);

// First-order correction alone: (J_leg / 4 J_rung) sum_j of the t+t-, t-t+ and
// t0t0 excitations on rungs (j, j+1) with singlets elsewhere. Throws for
// Delta = -1, J_rung = 0 or a Heisenberg rung.
PerturbativeState first_order_state(const LadderParams& params, Side side);

// rho_A to first order in J_leg / J_rung, assembled directly on the leg space.
ReducedDensityMatrix perturbative_rdm(const LadderParams& params);

// S^+, S^-, S^z of one site embedded in the 2^N leg space (site j == bit j).
Eigen::MatrixXcd leg_site_operator(const Eigen::Matrix2cd& local, int site, int num_rungs);

}  // namespace ladder
