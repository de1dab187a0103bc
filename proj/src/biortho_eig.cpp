#include "ladder/biortho_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/LU>
#include <lapacke.h>

namespace ladder {

bool eigenvalue_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    if (std::abs(a.imag()) != std::abs(b.imag()))
        return std::abs(a.imag()) < std::abs(b.imag());
    return a.imag() < b.imag();
}

Eigen::MatrixXcd EigenSystem::right_matrix() const {
    Eigen::MatrixXcd r(dim(), dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
        r.col(k) = pairs[static_cast<std::size_t>(k)].right;
    return r;
}

Eigen::MatrixXcd EigenSystem::left_matrix() const {
    Eigen::MatrixXcd l(dim(), dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
        l.row(k) = pairs[static_cast<std::size_t>(k)].left;
    return l;
}

Eigen::VectorXcd EigenSystem::eigenvalues() const {
    Eigen::VectorXcd e(dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
        e(k) = pairs[static_cast<std::size_t>(k)].eigenvalue;
    return e;
}

namespace {

void check_input(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eigendecomposition needs a square matrix");
    if (m.rows() == 0)
        throw std::invalid_argument("eigendecomposition needs a non-empty matrix");
    if (!m.allFinite())
        throw std::invalid_argument("matrix has non-finite entries");
}

struct RawEigen {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;  // unit-norm columns, empty when not requested
};

// LAPACK zgeev: Hessenberg QR to complex Schur form, then triangular back-substitution.
RawEigen run_zgeev(const Eigen::MatrixXcd& matrix, bool want_vectors) {
    const Eigen::Index n = matrix.rows();
    Eigen::MatrixXcd work = matrix;
    RawEigen out{Eigen::VectorXcd(n), want_vectors ? Eigen::MatrixXcd(n, n) : Eigen::MatrixXcd()};
    auto* a = reinterpret_cast<lapack_complex_double*>(work.data());
    auto* w = reinterpret_cast<lapack_complex_double*>(out.values.data());
    auto* vr = want_vectors ? reinterpret_cast<lapack_complex_double*>(out.vectors.data()) : nullptr;
    const auto ld = static_cast<lapack_int>(n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', ld, a, ld, w, nullptr, 1, vr, want_vectors ? ld : 1);
    if (info != 0)
        throw std::runtime_error("zgeev failed with info = " + std::to_string(info));
    return out;
}

std::vector<Eigen::Index> sorted_order(const Eigen::VectorXcd& values) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return eigenvalue_less(values(a), values(b)); });
    return order;
}

double tie_tolerance(const std::vector<cplx>& values) {
    double scale = 1.0;
    for (const cplx& v : values)
        scale = std::max(scale, std::abs(v));
    return 1e-9 * scale;
}

}  // namespace

EigenSystem eig_biorthogonal(const ComplexOperator& op) { return eig_biorthogonal(op.matrix); }

EigenSystem eig_biorthogonal(const Eigen::MatrixXcd& matrix) {
    check_input(matrix);
    const Eigen::Index n = matrix.rows();

    const RawEigen raw = run_zgeev(matrix, true);

    const std::vector<Eigen::Index> order = sorted_order(raw.values);
    Eigen::MatrixXcd right(n, n);
    Eigen::VectorXcd values(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        values(k) = raw.values(src);
        right.col(k) = raw.vectors.col(src).normalized();
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(right);
    Eigen::MatrixXcd left = lu.inverse();

    EigenSystem sys;
    const double norm_r = right.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_l = left.cwiseAbs().colwise().sum().maxCoeff();
    sys.condition = left.allFinite() ? norm_r * norm_l : INFINITY;
    sys.defective = !(sys.condition <= kDefectiveCondition);

    sys.pairs.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        BiorthogonalPair pair;
        pair.eigenvalue = values(k);
        pair.right = right.col(k);
        pair.left = left.row(k);
        const double product = pair.left.norm() * pair.right.norm();
        pair.overlap_condition = std::isfinite(product) && product > 0 ? 1.0 / product : 0.0;
        sys.pairs.push_back(std::move(pair));
    }
    return sys;
}

std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& matrix) {
    check_input(matrix);
    const RawEigen raw = run_zgeev(matrix, false);
    std::vector<cplx> out(raw.values.data(), raw.values.data() + raw.values.size());
    std::stable_sort(out.begin(), out.end(), eigenvalue_less);
    return out;
}

namespace {

GroundState select_ground(const EigenSystem& system) {
    if (system.pairs.empty())
        throw std::invalid_argument("empty eigensystem");
    std::vector<cplx> values;
    values.reserve(system.pairs.size());
    for (const auto& p : system.pairs)
        values.push_back(p.eigenvalue);

    const double tol = tie_tolerance(values);
    const double min_re = values.front().real();  // pairs are sorted by Re first

    std::size_t best = 0;
    std::vector<cplx> tied;
    for (std::size_t k = 0; k < values.size() && values[k].real() - min_re < tol; ++k) {
        tied.push_back(values[k]);
        if (std::abs(values[k].imag()) < std::abs(values[best].imag()))
            best = k;
    }

    GroundState gs;
    gs.pair = system.pairs[best];
    gs.index = best;
    if (values.size() == 1) {
        gs.gap = INFINITY;
    } else {
        // runner-up: first eigenvalue other than the chosen one
        const std::size_t other = best == 0 ? 1 : 0;
        gs.gap = values[other].real() - values[best].real();
    }
    if (tied.size() > 1) {
        gs.degenerate = true;
        gs.warning = "ground state is degenerate within tolerance (" + std::to_string(tied.size()) + " candidates)";
    }
    gs.candidates = std::move(tied);
    return gs;
}

}  // namespace

GroundState ground_state(const EigenSystem& system) {
    if (system.defective)
        throw std::domain_error("eigensystem is defective (condition " + std::to_string(system.condition) + ")");
    return select_ground(system);
}

SectorGroundState sector_scan_ground_state(const LadderParams& params, std::optional<TwoSz> pinned) {
    params.validate();
    std::vector<TwoSz> sectors = pinned ? std::vector<TwoSz>{*pinned} : ladder_sectors(params.num_rungs);
    std::stable_sort(sectors.begin(), sectors.end(), [](TwoSz a, TwoSz b) {
        if (std::abs(a.value) != std::abs(b.value))
            return std::abs(a.value) < std::abs(b.value);
        return a.value < b.value;
    });

    std::optional<SectorGroundState> best;
    std::vector<TwoSz> defective;
    std::vector<cplx> lowest;  // two lowest eigenvalues of every sector
    for (TwoSz sz : sectors) {
        SectorBasis basis = enumerate_sector(params.num_rungs, sz);
        const EigenSystem sys = eig_biorthogonal(build_hamiltonian(params, basis, HamiltonianPart::Total));
        if (sys.defective)
            defective.push_back(sz);
        for (std::size_t k = 0; k < std::min<std::size_t>(2, sys.pairs.size()); ++k)
            lowest.push_back(sys.pairs[k].eigenvalue);

        GroundState gs = select_ground(sys);
        if (best) {
            const cplx e_new = gs.pair.eigenvalue;
            const cplx e_old = best->ground.pair.eigenvalue;
            const double tol = 1e-9 * std::max({1.0, std::abs(e_new), std::abs(e_old)});
            const bool tied = std::abs(e_new.real() - e_old.real()) < tol;
            const bool better = tied ? std::abs(e_new.imag()) < std::abs(e_old.imag()) : e_new.real() < e_old.real();
            if (!better)
                continue;
        }
        best = SectorGroundState{std::move(basis), std::move(gs), sys.defective, {}};
    }

    GroundState& gs = best->ground;
    const cplx e0 = gs.pair.eigenvalue;
    const double tol = tie_tolerance(lowest);
    std::vector<cplx> tied;
    gs.gap = INFINITY;
    bool skipped_self = false;
    for (const cplx& e : lowest) {
        if (!skipped_self && e == e0) {
            skipped_self = true;
            continue;
        }
        gs.gap = std::min(gs.gap, e.real() - e0.real());
        if (std::abs(e.real() - e0.real()) < tol)
            tied.push_back(e);
    }
    if (!tied.empty()) {
        gs.degenerate = true;
        tied.insert(tied.begin(), e0);
        gs.candidates = std::move(tied);
        gs.warning = "ground state is degenerate within tolerance (" + std::to_string(gs.candidates.size()) +
                     " candidates across sectors)";
    }
    best->defective_sectors = std::move(defective);
    return std::move(*best);
}

}  // namespace ladder
