#pragma once

#include <optional>

#include <Eigen/Dense>

#include "ladder/ladder_model.hpp"

namespace ladder {

constexpr double kBiorthoNormTolerance = 1e-10;

struct ReducedDensityMatrix {
    ComplexOperator matrix;  // 2^N x 2^N on leg A, index == leg-A bits
    double trace_residual = 0.0;  // |Tr rho - 1|
    std::optional<LadderParams> source_params;

    int num_rungs() const;
};

// rho_A[a, a'] = sum_b right[b 2^N + a] * left[b 2^N + a'] over full-ladder
// vectors of length 4^N. No Hermitization is applied. Throws
// std::invalid_argument unless left * right == 1 within kBiorthoNormTolerance.
// Accepts num_rungs = 1 so a single rung can be checked by hand.
ReducedDensityMatrix partial_trace_leg_b(const Eigen::VectorXcd& right, const Eigen::RowVectorXcd& left, int num_rungs);

// Same contraction for vectors indexed by a ladder sector basis; the vectors
// are embedded into the full space (zeros outside the sector) first.
ReducedDensityMatrix biorthogonal_rdm(const Eigen::VectorXcd& right, const Eigen::RowVectorXcd& left,
                                      const SectorBasis& sector);

// Sector vector -> full 4^N vector.
Eigen::VectorXcd embed_full(const Eigen::VectorXcd& sector_vector, const SectorBasis& sector);

// One-site translation j -> j+1 (mod N) on the 2^N leg space.
Eigen::MatrixXcd leg_translation(int num_rungs);

}  // namespace ladder
