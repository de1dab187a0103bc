#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladder/run_config.hpp"

namespace ladder {

// One output row. Quantities a point did not compute stay NaN.
struct ResultRow {
    LadderParams params;
    double ground_energy_re = NAN;
    double ground_energy_im = NAN;
    double sz = NAN;
    double s_ttc_re = NAN;
    double s_ttc_im = NAN;
    double renyi2_re = NAN;
    double renyi2_im = NAN;
    double beta_fit_re = NAN;
    double beta_fit_im = NAN;
    double beta_pred = NAN;
    double delta_tilde_fit_re = NAN;
    double delta_tilde_fit_im = NAN;
    double delta_tilde_pred = NAN;
    double fit_residual = NAN;
    double rdm_oracle_distance = NAN;
    bool defective = false;
    double psi_fit_re = NAN;
    double psi_fit_im = NAN;
    double gauge_deviation = NAN;
};

struct PointResult {
    ResultRow row;
    std::vector<double> xi_real;        // entanglement energies, empty unless requested
    std::vector<std::string> warnings;  // human-readable diagnostics
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    unsigned threads = 1;
    bool allow_defective = false;
};

// Runs the requested tasks for one parameter point. Throws NumericalFailure on a
// defective ground-state sector or reduced density matrix unless allowed, in
// which case the row is marked defective and the dependent columns stay NaN.
PointResult evaluate_point(const LadderParams& params, const RunConfig& config, bool allow_defective);

// Every sweep point, fanned out over `threads` workers; results are ordered by
// sweep index. The first NumericalFailure (by sweep index) is rethrown.
std::vector<PointResult> run_sweep(const RunConfig& config, const RunOptions& options);

// Keeps LAPACK/BLAS on the calling thread so sweep workers own the parallelism.
void pin_blas_to_one_thread();

}  // namespace ladder
