#include "ladder/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "ladder/biortho_eig.hpp"
#include "ladder/biortho_rdm.hpp"
#include "ladder/entanglement.hpp"
#include "ladder/perturbation.hpp"

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace ladder {

void pin_blas_to_one_thread() {
    if (openblas_set_num_threads)
        openblas_set_num_threads(1);
}

PointResult evaluate_point(const LadderParams& params, const RunConfig& config, bool allow_defective) {
    PointResult out;
    ResultRow& row = out.row;
    row.params = params;

    auto refuse = [&](const std::string& what) {
        if (!allow_defective)
            throw NumericalFailure(what);
        row.defective = true;
        out.warnings.push_back(what);
    };

    const bool need_rdm = config.wants(Task::Rdm) || config.wants(Task::Entanglement) || config.wants(Task::FitBeta) ||
                          config.wants(Task::PerturbCheck);
    const bool need_ground = need_rdm || config.wants(Task::Spectrum);

    std::optional<ReducedDensityMatrix> rdm;
    if (need_ground) {
        const SectorGroundState gs = sector_scan_ground_state(params, config.pinned_sz);
        row.ground_energy_re = gs.ground.pair.eigenvalue.real();
        row.ground_energy_im = gs.ground.pair.eigenvalue.imag();
        row.sz = gs.sector.two_sz()->sz();
        if (gs.ground.degenerate)
            out.warnings.push_back(gs.ground.warning);
        if (gs.sector_defective) {
            refuse("ground-state sector S^z = " + std::to_string(row.sz) + " is defective");
        } else if (need_rdm) {
            rdm = biorthogonal_rdm(gs.ground.pair.right, gs.ground.pair.left, gs.sector);
            rdm->source_params = params;
        }
    }

    if (rdm && (config.wants(Task::Entanglement) || config.wants(Task::FitBeta))) {
        const EigenSystem rho_sys = eig_biorthogonal(rdm->matrix);
        if (rho_sys.defective) {
            refuse("reduced density matrix is defective (condition " + std::to_string(rho_sys.condition) + ")");
        } else {
            if (config.wants(Task::Entanglement)) {
                const EntanglementSpectrum spec = entanglement_spectrum(*rdm);
                const std::array<double, 1> orders{2.0};
                const EntropyReport s = ttc_entropies(spec, orders);
                row.s_ttc_re = s.s_ttc.real();
                row.s_ttc_im = s.s_ttc.imag();
                row.renyi2_re = s.renyi.at(2.0).real();
                row.renyi2_im = s.renyi.at(2.0).imag();
                out.xi_real = spec.xi_real;
                if (spec.has_zero)
                    out.warnings.push_back("zero RDM eigenvalue: entanglement energy reported as +inf");
            }
            if (config.wants(Task::FitBeta)) {
                const PredictedParameters pred = predicted_effective_parameters(params);
                row.beta_pred = pred.beta;
                row.delta_tilde_pred = pred.delta_tilde;
                try {
                    const EntanglementHamiltonian he = entanglement_hamiltonian(*rdm);
                    if (he.branch_note)
                        out.warnings.push_back("an RDM eigenvalue lies near the logarithm branch cut");
                    const EffectiveModelFit fit = fit_effective_model(he, params);
                    row.fit_residual = fit.residual;
                    if (fit.beta_fit) {
                        row.beta_fit_re = fit.beta_fit->real();
                        row.beta_fit_im = fit.beta_fit->imag();
                        row.psi_fit_re = fit.psi_fit->real();
                        row.psi_fit_im = fit.psi_fit->imag();
                        row.delta_tilde_fit_re = fit.delta_tilde_fit->real();
                        row.delta_tilde_fit_im = fit.delta_tilde_fit->imag();
                    } else {
                        out.warnings.push_back("hopping coefficients vanish: effective temperature undefined");
                    }
                } catch (const std::domain_error& e) {
                    refuse(e.what());
                }
            }
        }
    }

    if (rdm && config.wants(Task::PerturbCheck)) {
        if (params.rung_type == RungType::XXZNonreciprocal)
            row.rdm_oracle_distance = (rdm->matrix.matrix - perturbative_rdm(params).matrix.matrix).norm();
        else
            out.warnings.push_back("perturbative oracle is defined for the XXZ rung only");
    }

    if (config.wants(Task::GaugeCheck)) {
        const SectorBasis sector = enumerate_sector(params.num_rungs, config.pinned_sz.value_or(TwoSz{0}));
        row.gauge_deviation = spectrum_gauge_check(params, sector, config.gauge_phis);
    }
    return out;
}

std::vector<PointResult> run_sweep(const RunConfig& config, const RunOptions& options) {
    const std::vector<LadderParams> points = sweep_points(config);
    std::vector<std::optional<PointResult>> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                results[i] = evaluate_point(points[i], config, options.allow_defective);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(points.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(worker);
    }

    std::vector<PointResult> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*results[i]));
    }
    return out;
}

}  // namespace ladder
