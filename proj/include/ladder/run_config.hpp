#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladder/ladder_model.hpp"

namespace ladder {

enum class Task { Spectrum, Rdm, Entanglement, FitBeta, PerturbCheck, GaugeCheck };

struct OutputFormats {
    bool csv = true;
    bool json = false;
    bool svg = false;
};

struct Sweep {
    std::string parameter;  // a LadderParams field name
    std::vector<double> values;
};

struct RunConfig {
    LadderParams model;
    std::optional<TwoSz> pinned_sz;  // nullopt scans every sector
    std::vector<Task> tasks;
    std::optional<Sweep> sweep;
    std::filesystem::path output = "results";
    OutputFormats formats;
    std::vector<double> gauge_phis{0.0, 0.5, 1.0};

    bool wants(Task t) const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads an INI-style config with sections [model], [tasks], [sweep] and
/// [output]. Unknown sections or keys, malformed numbers, unknown task names
/// and sweep parameters that do not name a model field all raise ConfigError.
///
///     [model]
///     num_rungs = 3
///     j_leg = 1
///     j_rung = 10
///     delta = 0.5
///     phi = 0.7
///     psi = 0.3
///     ; periodic | open, xxz | heisenberg, auto | fixed total S^z
///     boundary = periodic
///     rung = xxz
///     sz = auto
///
///     [tasks]
///     run = fit_beta, perturb_check
///     gauge_phis = 0, 0.5, 1.0
///
///     [sweep]
///     parameter = j_rung
///     values = 10, 20, 40, 80
///
///     [output]
///     directory = results
///     formats = csv, json, svg
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

// "csv,json" -> formats. Throws ConfigError on an unknown or empty list.
OutputFormats parse_formats(const std::string& list);

// Copy of `base` with the named field set to `value`. Throws ConfigError for
// unknown names or a non-integral num_rungs.
LadderParams with_parameter(const LadderParams& base, const std::string& name, double value);

// Parameter points in sweep order (a single point without a sweep).
std::vector<LadderParams> sweep_points(const RunConfig& config);

std::string task_name(Task t);
std::string boundary_name(Boundary b);
std::string rung_type_name(RungType r);

}  // namespace ladder
