// ladder_ed: exact diagonalization and entanglement analysis of the
// nonreciprocal XXZ ladder, driven by an INI config file.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure or unwritable output.

#include <algorithm>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "ladder/pipeline.hpp"
#include "ladder/report.hpp"
#include "ladder/run_config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization and biorthogonal entanglement analysis of a nonreciprocal XXZ spin ladder"};
    std::string config_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool allow_defective = false;
    std::string formats;
    std::string output;
    bool quiet = false;
    app.add_option("config", config_path, "INI config with [model], [tasks], [sweep], [output] sections")->required();
    app.add_option("--threads", threads, "worker threads over sweep points")->check(CLI::PositiveNumber);
    app.add_flag("--allow-defective", allow_defective, "mark defective points instead of failing");
    app.add_option("--formats", formats, "comma-separated subset of csv,json,svg (overrides the config)");
    app.add_option("--output", output, "output directory (overrides the config)");
    app.add_flag("--quiet", quiet, "suppress warnings and the summary");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    ladder::RunConfig config;
    try {
        config = ladder::load_config(config_path);
        if (!formats.empty())
            config.formats = ladder::parse_formats(formats);
        if (!output.empty())
            config.output = output;
    } catch (const ladder::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    ladder::pin_blas_to_one_thread();

    std::vector<ladder::PointResult> results;
    try {
        results = ladder::run_sweep(config, {threads, allow_defective});
    } catch (const ladder::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << " (rerun with --allow-defective to record it)\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    if (!quiet) {
        for (std::size_t i = 0; i < results.size(); ++i)
            for (const std::string& w : results[i].warnings)
                std::cerr << "warning [point " << i << "]: " << w << "\n";
    }

    try {
        const auto written = ladder::emit_report(results, config.formats, config.output);
        if (!quiet)
            for (const auto& path : written)
                std::cerr << "wrote " << path.string() << "\n";
    } catch (const ladder::OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
