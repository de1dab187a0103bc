#include "doctest.h"

#include <cmath>

#include "ladder/biortho_eig.hpp"
#include "ladder/biortho_rdm.hpp"
#include "test_support.hpp"

using namespace ladder;
using ladder::testing::max_abs;

namespace {

LadderParams point(int n, double j_leg, double j_rung, double delta, double phi, double psi) {
    LadderParams p;
    p.num_rungs = n;
    p.j_leg = j_leg;
    p.j_rung = j_rung;
    p.delta = delta;
    p.phi = phi;
    p.psi = psi;
    return p;
}

ReducedDensityMatrix ground_rdm(const LadderParams& p) {
    const SectorGroundState g = sector_scan_ground_state(p);
    return biorthogonal_rdm(g.ground.pair.right, g.ground.pair.left, g.sector);
}

// rho_A by explicit Kronecker contraction: sum_b (I (x) <b|) |R><L| (I (x) |b>).
Eigen::MatrixXcd kron_trace(const Eigen::VectorXcd& r, const Eigen::RowVectorXcd& l, int n) {
    const Eigen::Index da = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
    const Eigen::MatrixXcd outer = r * l;
    for (Eigen::Index b = 0; b < da; ++b) {
        Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(da, 1);
        basis(b, 0) = 1.0;
        const Eigen::MatrixXcd proj = Eigen::kroneckerProduct(basis, Eigen::MatrixXcd::Identity(da, da));
        rho += proj.transpose() * outer * proj;
    }
    return rho;
}

}  // namespace

TEST_SUITE("biortho_rdm") {

TEST_CASE("single rung by hand: rho_A = I/2 for every Phi") {
    for (double phi : {0.0, 0.6, -1.4}) {
        // index = b*2 + a: |A up, B dn> = 1, |A dn, B up> = 2
        Eigen::VectorXcd right = Eigen::VectorXcd::Zero(4);
        Eigen::RowVectorXcd left = Eigen::RowVectorXcd::Zero(4);
        right(1) = std::exp(phi) / std::sqrt(2.0);
        right(2) = -1.0 / std::sqrt(2.0);
        left(1) = std::exp(-phi) / std::sqrt(2.0);
        left(2) = -1.0 / std::sqrt(2.0);
        const ReducedDensityMatrix rho = partial_trace_leg_b(right, left, 1);
        CHECK(max_abs(rho.matrix.matrix - 0.5 * Eigen::Matrix2cd::Identity()) < 1e-15);
        CHECK(rho.trace_residual < 1e-15);
    }
}

TEST_CASE("normalization is enforced") {
    Eigen::VectorXcd right = Eigen::VectorXcd::Zero(4);
    right(1) = 1.0;
    Eigen::RowVectorXcd left = Eigen::RowVectorXcd::Zero(4);
    left(1) = 2.0;
    CHECK_THROWS_AS(partial_trace_leg_b(right, left, 1), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace_leg_b(Eigen::VectorXcd::Zero(5), Eigen::RowVectorXcd::Zero(5), 1), std::invalid_argument);
}

TEST_CASE("contraction matches the Kronecker route") {
    ladder::testing::ParamGenerator gen(31);
    for (int trial = 0; trial < 4; ++trial) {
        const LadderParams p = gen.next(2, 3);
        const SectorGroundState g = sector_scan_ground_state(p);
        const Eigen::VectorXcd r = embed_full(g.ground.pair.right, g.sector);
        const Eigen::RowVectorXcd l = embed_full(g.ground.pair.left.transpose(), g.sector).transpose();
        const ReducedDensityMatrix rho = biorthogonal_rdm(g.ground.pair.right, g.ground.pair.left, g.sector);
        CHECK(max_abs(rho.matrix.matrix - kron_trace(r, l, p.num_rungs)) < 1e-13);
    }
}

TEST_CASE("decoupled rungs give the maximally mixed leg") {
    for (int n : {2, 3, 4}) {
        const ReducedDensityMatrix rho = ground_rdm(point(n, 0.0, 1.0, 0.5, 0.8, 0.3));
        const auto d = Eigen::Index{1} << n;
        CHECK(max_abs(rho.matrix.matrix - Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)) < 1e-10);
    }
}

TEST_CASE("Hermitian parameters: rho_A is Hermitian positive semidefinite") {
    for (int n : {2, 3}) {
        const ReducedDensityMatrix rho = ground_rdm(point(n, 1.0, 3.0, 0.4, 0.0, 0.0));
        CHECK(max_abs(rho.matrix.matrix - rho.matrix.matrix.adjoint()) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix.matrix);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("trace, Phi independence and translation symmetry") {
    ladder::testing::ParamGenerator gen(32);
    for (int trial = 0; trial < 5; ++trial) {
        LadderParams p = gen.next(2, 4);
        p.j_rung += 2.0;  // keep the ground state unique
        p.phi = 0.0;
        const ReducedDensityMatrix base = ground_rdm(p);
        CHECK(base.trace_residual <= 1e-10);
        CHECK(std::abs(base.matrix.matrix.trace() - cplx(1.0)) <= 1e-10);

        const Eigen::MatrixXcd t = leg_translation(p.num_rungs);
        CHECK((t * base.matrix.matrix - base.matrix.matrix * t).norm() <= 1e-9);

        const EigenSystem sys = eig_biorthogonal(base.matrix);
        CHECK(std::abs(sys.eigenvalues().sum() - cplx(1.0)) <= 1e-10);

        for (double phi : {0.5, 1.0}) {
            p.phi = phi;
            CHECK(max_abs(ground_rdm(p).matrix.matrix - base.matrix.matrix) <= 1e-8);
        }
    }
}

TEST_CASE("rho_A is block diagonal in leg-A S^z") {
    const ReducedDensityMatrix rho = ground_rdm(point(3, 1.0, 4.0, 0.5, 0.7, 0.3));
    const Eigen::MatrixXcd& m = rho.matrix.matrix;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j)))
                CHECK(std::abs(m(i, j)) < 1e-14);
}

TEST_CASE("leg translation is a cyclic permutation") {
    const Eigen::MatrixXcd t = leg_translation(3);
    CHECK(max_abs(t * t * t - Eigen::MatrixXcd::Identity(8, 8)) == 0.0);
    CHECK(t(0b010, 0b001) == cplx(1.0));
    CHECK(t(0b001, 0b100) == cplx(1.0));
}

}  // TEST_SUITE
