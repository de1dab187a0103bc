#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladder/pipeline.hpp"

namespace ladder {

// Fixed column order of results.csv and of the keys of each results.json object.
const std::vector<std::string>& result_columns();

// Cell text for one column: numbers with 17 significant digits, "nan" for
// missing values, booleans as 0/1, enums by name.
std::vector<std::string> csv_cells(const ResultRow& row);

void write_csv(std::span<const ResultRow> rows, std::ostream& out);
void write_json(std::span<const ResultRow> rows, std::ostream& out);

// Re(xi) against index, one polyline per point.
void write_spectrum_svg(std::span<const PointResult> points, std::ostream& out);
// |Re beta_fit - beta_pred| against J_rung on log-log axes. Returns false (and
// writes nothing) when no row carries both numbers.
bool write_convergence_svg(std::span<const ResultRow> rows, std::ostream& out);

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes results.csv / results.json / plot_spectrum.svg / plot_convergence.svg
// into `directory` (created if missing). Returns the files written. Throws
// OutputError when the directory or a file cannot be written, and
// std::invalid_argument on an empty result set.
std::vector<std::filesystem::path> emit_report(std::span<const PointResult> points, const OutputFormats& formats,
                                               const std::filesystem::path& directory);

}  // namespace ladder
