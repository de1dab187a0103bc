#pragma once

#include <complex>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "ladder/spin_basis.hpp"

namespace ladder {

using cplx = std::complex<double>;

enum class Boundary { Periodic, Open };

// XXZNonreciprocal: J_rung[(e^Phi S+_A S-_B + e^-Phi S-_A S+_B)/2 + Delta Sz_A Sz_B].
// HeisenbergIso:    J_rung S_A . S_B (Hermitian, isotropic; Phi and Delta unused on rungs).
enum class RungType { XXZNonreciprocal, HeisenbergIso };

struct LadderParams {
    int num_rungs = 4;
    double j_leg = 1.0;
    double j_rung = 10.0;
    double delta = 0.5;
    double phi = 0.0;  // rung nonreciprocity
    double psi = 0.0;  // leg nonreciprocity
    Boundary boundary = Boundary::Periodic;
    RungType rung_type = RungType::XXZNonreciprocal;

    // Throws std::invalid_argument on N < 2, Delta <= -1 or non-finite couplings.
    void validate() const;
};

enum class OperatorSpace { FullLadder, LegOnly };

struct SectorTag {
    int num_rungs;
    TwoSz two_sz;
};

struct ComplexOperator {
    Eigen::MatrixXcd matrix;
    std::optional<SectorTag> sector;
    OperatorSpace space = OperatorSpace::FullLadder;

    Eigen::Index dim() const { return matrix.rows(); }
};

enum class HamiltonianPart { Total, LegA, LegB, Rung };

// Dense matrix of one part of the ladder Hamiltonian in a ladder sector basis.
// Bonds are accumulated bond-major in ascending rung order; with periodic
// boundaries the wrap bond (N-1, 0) is included, so N = 2 carries both (0,1)
// and (1,0).
ComplexOperator build_hamiltonian(const LadderParams& params, const SectorBasis& sector, HamiltonianPart part);

// Single-chain XXZ matrix with the leg nonreciprocity of `params` and anisotropy
// `delta_override`, on a leg basis. delta_override = Delta gives H_A;
// delta_override = (Delta + Delta^2)/2 gives the renormalized chain.
ComplexOperator build_subsystem_hamiltonian(const LadderParams& params, double delta_override, const SectorBasis& leg);

// Max over `phi_values` of the Hausdorff distance between the eigenvalue
// multiset at that Phi and at Phi = 0. Witnesses that Phi is a similarity gauge.
double spectrum_gauge_check(const LadderParams& params, const SectorBasis& sector, std::span<const double> phi_values);

// Hausdorff distance between two finite point sets in the complex plane.
double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace ladder
