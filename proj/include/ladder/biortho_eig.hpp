#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ladder/ladder_model.hpp"

namespace ladder {

// Eigenvector-matrix condition number above which a system is treated as defective.
constexpr double kDefectiveCondition = 1e10;

struct BiorthogonalPair {
    cplx eigenvalue;
    Eigen::VectorXcd right;
    Eigen::RowVectorXcd left;  // <psi^L| as a row, left * right == 1
    // 1 / (|left| |right|): reciprocal eigenvalue condition, tends to 0 at an exceptional point.
    double overlap_condition = 1.0;
};

struct EigenSystem {
    std::vector<BiorthogonalPair> pairs;
    bool defective = false;
    // 1-norm condition number of the right-eigenvector matrix (unit columns).
    double condition = 1.0;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(pairs.size()); }
    Eigen::MatrixXcd right_matrix() const;  // columns are right vectors
    Eigen::MatrixXcd left_matrix() const;   // rows are left vectors
    Eigen::VectorXcd eigenvalues() const;
};

// Total order used for every spectrum: Re ascending, then |Im|, then Im.
bool eigenvalue_less(const cplx& a, const cplx& b);

/// Full non-symmetric eigendecomposition with biorthonormal left vectors.
///
/// Right vectors come from LAPACK zgeev (complex Schur form) and are normalized to
/// unit length; the left vectors are the rows of the inverse of the right
/// eigenvector matrix, so left_m * right_n = delta_mn holds to inversion
/// accuracy. Systems whose eigenvector matrix has condition above
/// kDefectiveCondition (or a non-finite inverse) come back with defective set.
EigenSystem eig_biorthogonal(const ComplexOperator& op);
EigenSystem eig_biorthogonal(const Eigen::MatrixXcd& matrix);

// Eigenvalues only, sorted with eigenvalue_less.
std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& matrix);

struct GroundState {
    BiorthogonalPair pair;
    std::size_t index = 0;  // position in the sorted spectrum
    double gap = 0.0;       // Re E(runner-up) - Re E(ground); +inf for a 1x1 system
    bool degenerate = false;
    std::vector<cplx> candidates;  // every eigenvalue tied with the minimum of Re E
    std::string warning;
};

// Minimizer of Re E. Ties within 1e-9 * max(1, max|E|) go to the smallest |Im E|,
// then to sort order. Throws std::domain_error on a defective system.
GroundState ground_state(const EigenSystem& system);

struct SectorGroundState {
    SectorBasis sector;
    GroundState ground;
    bool sector_defective = false;          // the winning sector itself
    std::vector<TwoSz> defective_sectors;   // every sector flagged during the scan
};

// Scans every S^z sector (or only `pinned` when given) and returns the global
// Re E minimizer. Sectors are visited in order of |S^z|, then S^z, and a tie
// (same tolerance as ground_state) keeps the first visited. Defective sectors
// still compete on their eigenvalues; they are listed in defective_sectors and
// a defective winner sets sector_defective so callers can refuse it.
SectorGroundState sector_scan_ground_state(const LadderParams& params, std::optional<TwoSz> pinned = std::nullopt);

}  // namespace ladder
