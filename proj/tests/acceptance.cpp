// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ladder/biortho_eig.hpp"
#include "ladder/biortho_rdm.hpp"
#include "ladder/entanglement.hpp"
#include "ladder/perturbation.hpp"
#include "ladder/pipeline.hpp"
#include "test_support.hpp"

using namespace ladder;
namespace fs = std::filesystem;
using std::numbers::ln2;

namespace {

struct Point {
    LadderParams params;
    SectorGroundState ground;
    EigenSystem hamiltonian;
    ReducedDensityMatrix rdm;
    EigenSystem rdm_system;
};

// Every point analysed here, for the cross-cutting criteria 9 and 11.
std::vector<Point> g_points;

LadderParams make(int n, double j_leg, double j_rung, double delta, double phi, double psi) {
    LadderParams p;
    p.num_rungs = n;
    p.j_leg = j_leg;
    p.j_rung = j_rung;
    p.delta = delta;
    p.phi = phi;
    p.psi = psi;
    return p;
}

const Point& analyse(const LadderParams& p) {
    Point pt{p, sector_scan_ground_state(p), {}, {}, {}};
    pt.hamiltonian = eig_biorthogonal(build_hamiltonian(p, pt.ground.sector, HamiltonianPart::Total));
    pt.rdm = biorthogonal_rdm(pt.ground.ground.pair.right, pt.ground.ground.pair.left, pt.ground.sector);
    pt.rdm_system = eig_biorthogonal(pt.rdm.matrix);
    g_points.push_back(std::move(pt));
    return g_points.back();
}

EffectiveModelFit fit_at(const LadderParams& p) {
    return fit_effective_model(entanglement_hamiltonian(analyse(p).rdm), p);
}

double max_abs(const Eigen::MatrixXcd& m) { return ladder::testing::max_abs(m); }

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt_double(const char* name, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%.4g", name, v);
    return buf;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& s : parts)
        out += (out.empty() ? "" : " ") + s;
    return out;
}

void run(int id, const std::function<void(int)>& body) {
    try {
        body(id);
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main() {
    pin_blas_to_one_thread();

    run(1, [](int id) {
        const Point& pt = analyse(make(4, 0.0, 1.0, 0.5, 0.0, 0.0));
        const double e_err = std::abs(pt.ground.ground.pair.eigenvalue - cplx(-2.5));
        const double rho_err = max_abs(pt.rdm.matrix.matrix - Eigen::MatrixXcd::Identity(16, 16) / 16.0);
        const std::array<double, 1> orders{2.0};
        const double s_err = std::abs(ttc_entropies(entanglement_spectrum(pt.rdm), orders).s_ttc - cplx(4 * ln2));
        report(id, e_err <= 1e-10 && rho_err <= 1e-10 && s_err <= 1e-10,
               join({"unperturbed limit", fmt_double("|E0+2.5|", e_err), fmt_double("|rho-I/16|", rho_err),
                     fmt_double("|S-4ln2|", s_err)}));
    });

    run(2, [](int id) {
        const std::array<double, 3> phis{0.0, 0.5, 1.0};
        const LadderParams base = make(3, 1.0, 5.0, 0.5, 0.0, 0.3);
        double spec_dev = 0.0;
        for (TwoSz sz : ladder_sectors(3))
            spec_dev = std::max(spec_dev, spectrum_gauge_check(base, enumerate_sector(3, sz), phis));
        const Eigen::MatrixXcd rho0 = analyse(base).rdm.matrix.matrix;
        double rho_dev = 0.0;
        for (double phi : phis) {
            LadderParams p = base;
            p.phi = phi;
            rho_dev = std::max(rho_dev, max_abs(analyse(p).rdm.matrix.matrix - rho0));
        }
        report(id, spec_dev <= 1e-8 && rho_dev <= 1e-8,
               join({"Phi gauge invariance", fmt_double("spectrum", spec_dev), fmt_double("rho", rho_dev)}));
    });

    run(3, [](int id) {
        const std::array<double, 4> j_rungs{10, 20, 40, 80};
        std::vector<double> dist;
        for (double j : j_rungs) {
            const LadderParams p = make(3, 1.0, j, 0.5, 0.7, 0.3);
            dist.push_back((analyse(p).rdm.matrix.matrix - perturbative_rdm(p).matrix.matrix).norm());
        }
        bool ok = true;
        std::vector<std::string> parts{"oracle convergence"};
        for (std::size_t k = 1; k < dist.size(); ++k) {
            const double r = dist[k - 1] / dist[k];
            ok = ok && r >= 2.0 && r <= 8.0;
            parts.push_back(fmt_double("ratio", r));
        }
        parts.push_back(fmt_double("dist@80", dist.back()));
        report(id, ok, join(parts));
    });

    run(4, [](int id) {
        const EffectiveModelFit fit = fit_at(make(3, 1.0, 50.0, 0.5, 0.7, 0.3));
        const double pred = 4.0 / 75.0;
        const bool have = fit.beta_fit.has_value();
        const double rel = have ? std::abs(fit.beta_fit->real() - pred) / pred : INFINITY;
        const double im = have ? std::abs(fit.beta_fit->imag()) : INFINITY;
        report(id, have && rel <= 0.05 && im <= 0.05 * fit.beta_fit->real() && fit.residual <= 0.05,
               join({"effective temperature", fmt_double("rel_err", rel), fmt_double("|Im|", im),
                     fmt_double("residual", fit.residual)}));
    });

    run(5, [](int id) {
        const auto dt = [](double delta) {
            const EffectiveModelFit fit = fit_at(make(3, 1.0, 50.0, delta, 0.7, 0.3));
            return fit.delta_tilde_fit ? fit.delta_tilde_fit->real() : NAN;
        };
        const double d1 = dt(1.0);
        const double d0 = dt(0.0);
        const double dh = dt(0.5);
        report(id, std::abs(d1 - 1.0) <= 0.05 && std::abs(d0) <= 0.02 && std::abs(dh - 0.375) <= 0.1 * 0.375,
               join({"anisotropy renormalization", fmt_double("D=1", d1), fmt_double("D=0", d0),
                     fmt_double("D=0.5", dh)}));
    });

    run(6, [](int id) {
        const EffectiveModelFit fit = fit_at(make(3, 1.0, 50.0, 0.5, 0.7, 0.3));
        const double psi = fit.psi_fit ? fit.psi_fit->real() : NAN;
        report(id, std::abs(psi - 0.3) <= 0.02, join({"Psi recovery", fmt_double("psi_fit", psi)}));
    });

    run(7, [](int id) {
        const Point& pt = analyse(make(3, 1.0, 10.0, 0.5, 0.7, 0.0));
        const EntanglementSpectrum spec = entanglement_spectrum(pt.rdm);
        bool positive = true;
        for (cplx w : spec.omegas)
            positive = positive && w.real() > 0.0;
        report(id, spec.im_max <= 1e-8 && positive,
               join({"real entanglement energies", fmt_double("max|Im w|", spec.im_max),
                     positive ? "all Re w > 0" : "non-positive w"}));
    });

    run(8, [](int id) {
        double herm = 0.0;
        double im = 0.0;
        double vn = 0.0;
        for (const LadderParams& p : {make(3, 1.0, 10.0, 0.5, 0.0, 0.0), make(4, 1.0, 3.0, 0.2, 0.0, 0.0)}) {
            const Point& pt = analyse(p);
            const Eigen::MatrixXcd& rho = pt.rdm.matrix.matrix;
            herm = std::max(herm, max_abs(rho - rho.adjoint()));
            const std::array<double, 1> orders{2.0};
            const cplx s = ttc_entropies(entanglement_spectrum(pt.rdm), orders).s_ttc;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
            double s_vn = 0.0;
            for (double lambda : es.eigenvalues())
                if (lambda > 0.0)
                    s_vn -= lambda * std::log(lambda);
            im = std::max(im, std::abs(s.imag()));
            vn = std::max(vn, std::abs(s.real() - s_vn));
        }
        report(id, herm <= 1e-10 && im <= 1e-10 && vn <= 1e-10,
               join({"Hermitian regression", fmt_double("|rho-rho^dag|", herm), fmt_double("|Im S|", im),
                     fmt_double("|S-S_vN|", vn)}));
    });

    run(9, [](int id) {
        double worst = 0.0;
        std::size_t tested = 0;
        for (const Point& pt : g_points) {
            if (pt.rdm_system.defective)
                continue;
            worst = std::max(worst, entanglement_hamiltonian(pt.rdm).reconstruction_residual);
            ++tested;
        }
        report(id, tested > 0 && worst <= 1e-9,
               join({"exp(-H_E)/2^N round trip", fmt_double("worst", worst), "points=" + std::to_string(tested)}));
    });

    run(10, [](int id) {
        double worst_margin = -INFINITY;
        bool complex_seen = false;
        for (const LadderParams& p : {make(3, 1.0, 4.0, 0.5, 0.7, 0.3), make(3, 1.0, 10.0, 0.5, 0.7, 0.0),
                                      make(4, 1.0, 6.0, 0.2, 0.3, 0.4)}) {
            const EntanglementSpectrum spec = entanglement_spectrum(analyse(p).rdm);
            complex_seen = complex_seen || spec.im_max > 1e-8;
            const std::array<double, 1> orders{1.001};
            const EntropyReport e = ttc_entropies(spec, orders);
            const double diff = std::abs(e.renyi.at(1.001) - e.s_ttc);
            worst_margin = std::max(worst_margin, diff / (1e-3 * (1.0 + std::abs(e.s_ttc))));
        }
        report(id, complex_seen && worst_margin <= 1.0,
               join({"Renyi n=1.001 consistency", fmt_double("worst diff/tol", worst_margin),
                     complex_seen ? "complex omega included" : "no complex omega"}));
    });

    run(11, [](int id) {
        double lr = 0.0;
        double recon = 0.0;
        std::size_t systems = 0;
        const auto check = [&](const EigenSystem& sys, const Eigen::MatrixXcd& m) {
            if (sys.defective)
                return;
            const auto d = sys.dim();
            const Eigen::MatrixXcd r = sys.right_matrix();
            const Eigen::MatrixXcd l = sys.left_matrix();
            lr = std::max(lr, max_abs(l * r - Eigen::MatrixXcd::Identity(d, d)) / (1e-10 * static_cast<double>(d)));
            const double rel = (r * sys.eigenvalues().asDiagonal() * l - m).norm() / m.norm();
            recon = std::max(recon, rel / (1e-8 * sys.condition));
            ++systems;
        };
        for (const Point& pt : g_points) {
            check(pt.hamiltonian, build_hamiltonian(pt.params, pt.ground.sector, HamiltonianPart::Total).matrix);
            check(pt.rdm_system, pt.rdm.matrix.matrix);
        }
        Eigen::MatrixXcd jordan(2, 2);
        jordan << 0, 1, 0, 0;
        const bool flagged = eig_biorthogonal(jordan).defective;
        report(id, systems > 0 && lr <= 1.0 && recon <= 1.0 && flagged,
               join({"eigensolver contract", fmt_double("LR/tol", lr), fmt_double("recon/tol", recon),
                     "systems=" + std::to_string(systems), flagged ? "Jordan flagged" : "Jordan NOT flagged"}));
    });

    run(12, [](int id) {
        const fs::path dir = fs::temp_directory_path() / "ladder_acceptance_determinism";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream(dir / "sweep.ini") << "[model]\nnum_rungs = 3\nj_leg = 1\ndelta = 0.5\nphi = 0.7\npsi = 0.3\n"
                                         << "[tasks]\nrun = fit_beta, perturb_check\n"
                                         << "[sweep]\nparameter = j_rung\nvalues = 10, 20, 40, 80\n";
        std::vector<std::string> csvs;
        for (const char* sub : {"run1", "run2", "run3"}) {
            const std::string cmd = std::string(LADDER_ED_PATH) + " " + (dir / "sweep.ini").string() +
                                    " --quiet --output " + (dir / sub).string();
            const int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
                report(id, false, "CLI run failed");
                return;
            }
            csvs.push_back(slurp(dir / sub / "results.csv"));
        }
        const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[1] == csvs[2];
        report(id, same, std::string("CLI determinism: ") + (same ? "3 runs byte-identical" : "CSV differs") +
                             " bytes=" + std::to_string(csvs[0].size()));
    });

    std::printf("%s: %d failing criteria\n", g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
    return g_failures == 0 ? 0 : 1;
}
