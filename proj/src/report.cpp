#include "ladder/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <system_error>
#include <variant>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include "json.hpp"

namespace ladder {

namespace {

using Cell = std::variant<double, int, bool, std::string>;

struct Column {
    std::string name;
    std::function<Cell(const ResultRow&)> get;
};

const std::vector<Column>& columns() {
    static const std::vector<Column> table{
        {"num_rungs", [](const ResultRow& r) -> Cell { return r.params.num_rungs; }},
        {"j_leg", [](const ResultRow& r) -> Cell { return r.params.j_leg; }},
        {"j_rung", [](const ResultRow& r) -> Cell { return r.params.j_rung; }},
        {"delta", [](const ResultRow& r) -> Cell { return r.params.delta; }},
        {"phi", [](const ResultRow& r) -> Cell { return r.params.phi; }},
        {"psi", [](const ResultRow& r) -> Cell { return r.params.psi; }},
        {"boundary", [](const ResultRow& r) -> Cell { return boundary_name(r.params.boundary); }},
        {"rung_type", [](const ResultRow& r) -> Cell { return rung_type_name(r.params.rung_type); }},
        {"ground_energy_re", [](const ResultRow& r) -> Cell { return r.ground_energy_re; }},
        {"ground_energy_im", [](const ResultRow& r) -> Cell { return r.ground_energy_im; }},
        {"sz", [](const ResultRow& r) -> Cell { return r.sz; }},
        {"s_ttc_re", [](const ResultRow& r) -> Cell { return r.s_ttc_re; }},
        {"s_ttc_im", [](const ResultRow& r) -> Cell { return r.s_ttc_im; }},
        {"renyi2_re", [](const ResultRow& r) -> Cell { return r.renyi2_re; }},
        {"renyi2_im", [](const ResultRow& r) -> Cell { return r.renyi2_im; }},
        {"beta_fit_re", [](const ResultRow& r) -> Cell { return r.beta_fit_re; }},
        {"beta_fit_im", [](const ResultRow& r) -> Cell { return r.beta_fit_im; }},
        {"beta_pred", [](const ResultRow& r) -> Cell { return r.beta_pred; }},
        {"delta_tilde_fit_re", [](const ResultRow& r) -> Cell { return r.delta_tilde_fit_re; }},
        {"delta_tilde_fit_im", [](const ResultRow& r) -> Cell { return r.delta_tilde_fit_im; }},
        {"delta_tilde_pred", [](const ResultRow& r) -> Cell { return r.delta_tilde_pred; }},
        {"fit_residual", [](const ResultRow& r) -> Cell { return r.fit_residual; }},
        {"rdm_oracle_distance", [](const ResultRow& r) -> Cell { return r.rdm_oracle_distance; }},
        {"defective", [](const ResultRow& r) -> Cell { return r.defective; }},
        {"psi_fit_re", [](const ResultRow& r) -> Cell { return r.psi_fit_re; }},
        {"psi_fit_im", [](const ResultRow& r) -> Cell { return r.psi_fit_im; }},
        {"gauge_deviation", [](const ResultRow& r) -> Cell { return r.gauge_deviation; }},
    };
    return table;
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "1" : "0";
            else if constexpr (std::is_same_v<T, int>)
                return std::to_string(v);
            else
                return v;
        },
        c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

// Shared plot frame: data range -> pixel mapping with a fixed margin.
struct Frame {
    double x0, x1, y0, y1;
    static constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 50;

    double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void widen(double& lo, double& hi) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.5;
        lo -= pad;
        hi += pad;
    } else {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
}

std::string num(double v) { return fmt::format("{:.6g}", v); }

void svg_open(std::ostream& out, const std::string& title) {
    out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)",
                       Frame::width, Frame::height, Frame::width, Frame::height)
        << "\n";
    out << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
    out << fmt::format(R"(<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>)",
                       Frame::width / 2, title)
        << "\n";
}

void svg_axes(std::ostream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel,
              const std::function<std::string(double)>& xtick, const std::function<std::string(double)>& ytick) {
    out << fmt::format(R"(<g stroke="black" stroke-width="1"><line x1="{0}" y1="{1}" x2="{2}" y2="{1}"/>)"
                       R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{3}"/></g>)",
                       Frame::left, Frame::height - Frame::bottom, Frame::width - Frame::right, Frame::top)
        << "\n";
    out << R"(<g font-family="sans-serif" font-size="11">)" << "\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        out << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", num(f.px(xv)),
                           Frame::height - Frame::bottom + 16, xtick(xv))
            << "\n";
        out << fmt::format(R"(<text x="{}" y="{}" text-anchor="end">{}</text>)", Frame::left - 6, num(f.py(yv) + 4),
                           ytick(yv))
            << "\n";
    }
    out << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", Frame::width / 2, Frame::height - 12,
                       xlabel)
        << "\n";
    out << fmt::format(R"svg(<text x="16" y="{}" transform="rotate(-90 16 {})" text-anchor="middle">{}</text>)svg",
                       Frame::height / 2, Frame::height / 2, ylabel)
        << "\n";
    out << "</g>\n";
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string point_label(const LadderParams& p) {
    return fmt::format("N={} Jleg={} Jrung={} D={} Phi={} Psi={}", p.num_rungs, num(p.j_leg), num(p.j_rung),
                       num(p.delta), num(p.phi), num(p.psi));
}

}  // namespace

const std::vector<std::string>& result_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const Column& c : columns())
            n.push_back(c.name);
        return n;
    }();
    return names;
}

std::vector<std::string> csv_cells(const ResultRow& row) {
    std::vector<std::string> cells;
    cells.reserve(columns().size());
    for (const Column& c : columns())
        cells.push_back(cell_text(c.get(row)));
    return cells;
}

void write_csv(std::span<const ResultRow> rows, std::ostream& out) {
    out << fmt::format("{}\n", fmt::join(result_columns(), ","));
    for (const ResultRow& r : rows)
        out << fmt::format("{}\n", fmt::join(csv_cells(r), ","));
}

void write_json(std::span<const ResultRow> rows, std::ostream& out) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const ResultRow& r : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const Column& c : columns())
            obj[c.name] = cell_json(c.get(r));
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << "\n";
}

void write_spectrum_svg(std::span<const PointResult> points, std::ostream& out) {
    Frame f{0, 1, 0, 1};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t longest = 1;
    for (const PointResult& p : points) {
        longest = std::max(longest, p.xi_real.size());
        for (double x : p.xi_real)
            if (std::isfinite(x)) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
    }
    if (!std::isfinite(lo)) {
        lo = -1;
        hi = 1;
    }
    widen(lo, hi);
    f.x0 = -0.5;
    f.x1 = static_cast<double>(longest) - 0.5;
    f.y0 = lo;
    f.y1 = hi;

    svg_open(out, "Entanglement spectrum");
    svg_axes(out, f, "index i", "Re xi_i", [](double v) { return num(std::round(v)); }, num);
    for (std::size_t k = 0; k < points.size(); ++k) {
        const PointResult& p = points[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::string data;
        std::string path;
        for (std::size_t i = 0; i < p.xi_real.size(); ++i) {
            data += (i ? " " : "") + format_double(p.xi_real[i]);
            if (!std::isfinite(p.xi_real[i]))
                continue;
            path += fmt::format("{}{},{}", path.empty() ? "" : " ", num(f.px(static_cast<double>(i))),
                                num(f.py(p.xi_real[i])));
        }
        out << fmt::format("<!-- series {} {} xi_real: {} -->\n", k, point_label(p.row.params), data);
        if (!path.empty())
            out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", color, path)
                << "\n";
        out << fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="10" fill="{}">{}</text>)",
                           Frame::left + 10, Frame::top + 12 + 12 * static_cast<double>(k), color,
                           point_label(p.row.params))
            << "\n";
    }
    out << "</svg>\n";
}

bool write_convergence_svg(std::span<const ResultRow> rows, std::ostream& out) {
    struct Pt {
        double j_rung, err;
    };
    std::vector<Pt> pts;
    for (const ResultRow& r : rows) {
        const double err = std::abs(r.beta_fit_re - r.beta_pred);
        if (std::isfinite(err) && err > 0 && r.params.j_rung > 0)
            pts.push_back({r.params.j_rung, err});
    }
    if (pts.empty())
        return false;

    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    for (const Pt& p : pts) {
        xlo = std::min(xlo, std::log10(p.j_rung));
        xhi = std::max(xhi, std::log10(p.j_rung));
        ylo = std::min(ylo, std::log10(p.err));
        yhi = std::max(yhi, std::log10(p.err));
    }
    widen(xlo, xhi);
    widen(ylo, yhi);
    const Frame f{xlo, xhi, ylo, yhi};

    svg_open(out, "Effective temperature convergence");
    auto pow_tick = [](double v) { return num(std::pow(10.0, v)); };
    svg_axes(out, f, "J_rung (log)", "|Re beta_fit - beta_pred| (log)", pow_tick, pow_tick);
    std::string path;
    out << "<!-- data j_rung,abs_beta_error:";
    for (const Pt& p : pts)
        out << " " << format_double(p.j_rung) << "," << format_double(p.err);
    out << " -->\n";
    for (const Pt& p : pts) {
        const double x = f.px(std::log10(p.j_rung));
        const double y = f.py(std::log10(p.err));
        path += fmt::format("{}{},{}", path.empty() ? "" : " ", num(x), num(y));
        out << fmt::format(R"(<circle cx="{}" cy="{}" r="3.5" fill="{}"/>)", num(x), num(y), kPalette[0]) << "\n";
    }
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", kPalette[0], path)
        << "\n";
    out << "</svg>\n";
    return true;
}

std::vector<std::filesystem::path> emit_report(std::span<const PointResult> points, const OutputFormats& formats,
                                               const std::filesystem::path& directory) {
    if (points.empty())
        throw std::invalid_argument("no result rows to emit");

    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory))
        throw OutputError("cannot create output directory " + directory.string() +
                          (ec ? ": " + ec.message() : std::string()));

    std::vector<ResultRow> rows;
    rows.reserve(points.size());
    for (const PointResult& p : points)
        rows.push_back(p.row);

    std::vector<std::filesystem::path> written;
    auto write_file = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
        const std::filesystem::path path = directory / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw OutputError("cannot write " + path.string());
        body(out);
        out.flush();
        if (!out)
            throw OutputError("error while writing " + path.string());
        written.push_back(path);
    };

    if (formats.csv)
        write_file("results.csv", [&](std::ostream& o) { write_csv(rows, o); });
    if (formats.json)
        write_file("results.json", [&](std::ostream& o) { write_json(rows, o); });
    if (formats.svg) {
        const bool any_spectrum =
            std::any_of(points.begin(), points.end(), [](const PointResult& p) { return !p.xi_real.empty(); });
        if (any_spectrum)
            write_file("plot_spectrum.svg", [&](std::ostream& o) { write_spectrum_svg(points, o); });
        std::ostringstream convergence;
        if (write_convergence_svg(rows, convergence))
            write_file("plot_convergence.svg", [&](std::ostream& o) { o << convergence.str(); });
    }
    return written;
}

}  // namespace ladder
