#include "ladder/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ladder {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, Task>& task_table() {
    static const std::map<std::string, Task> table{
        {"spectrum", Task::Spectrum},          {"rdm", Task::Rdm},
        {"entanglement", Task::Entanglement},  {"fit_beta", Task::FitBeta},
        {"perturb_check", Task::PerturbCheck}, {"gauge_check", Task::GaugeCheck},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = s.find(',', start);
        const std::string item = trim(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (!item.empty())
            out.push_back(item);
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    return out;
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("'" + key + "': not a number: '" + text + "'");
    if (!std::isfinite(value))
        throw ConfigError("'" + key + "': value must be finite");
    return value;
}

void check_keys(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed) {
    for (const auto& [key, child] : section) {
        if (!child.empty())
            throw ConfigError("[" + name + "] may not contain nested sections");
        if (!allowed.contains(key))
            throw ConfigError("unknown key '" + key + "' in [" + name + "]");
    }
}

void read_model(const pt::ptree& model, RunConfig& cfg) {
    check_keys(model, "model", {"num_rungs", "j_leg", "j_rung", "delta", "phi", "psi", "boundary", "rung", "sz"});
    for (const auto& [key, child] : model) {
        const std::string value = child.get_value<std::string>();
        if (key == "boundary") {
            const std::string v = lower(trim(value));
            if (v == "periodic")
                cfg.model.boundary = Boundary::Periodic;
            else if (v == "open")
                cfg.model.boundary = Boundary::Open;
            else
                throw ConfigError("boundary must be 'periodic' or 'open'");
        } else if (key == "rung") {
            const std::string v = lower(trim(value));
            if (v == "xxz")
                cfg.model.rung_type = RungType::XXZNonreciprocal;
            else if (v == "heisenberg")
                cfg.model.rung_type = RungType::HeisenbergIso;
            else
                throw ConfigError("rung must be 'xxz' or 'heisenberg'");
        } else if (key == "sz") {
            if (lower(trim(value)) == "auto") {
                cfg.pinned_sz.reset();
            } else {
                try {
                    cfg.pinned_sz = two_sz_from(parse_number(key, value));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else {
            cfg.model = with_parameter(cfg.model, key, parse_number(key, value));
        }
    }
}

void read_tasks(const pt::ptree& tasks, RunConfig& cfg) {
    check_keys(tasks, "tasks", {"run", "gauge_phis"});
    if (auto run = tasks.get_optional<std::string>("run")) {
        cfg.tasks.clear();
        for (const std::string& name : split_list(*run)) {
            const auto it = task_table().find(lower(name));
            if (it == task_table().end())
                throw ConfigError("unknown task '" + name + "'");
            if (!cfg.wants(it->second))
                cfg.tasks.push_back(it->second);
        }
    }
    if (auto phis = tasks.get_optional<std::string>("gauge_phis")) {
        cfg.gauge_phis.clear();
        for (const std::string& v : split_list(*phis))
            cfg.gauge_phis.push_back(parse_number("gauge_phis", v));
        if (cfg.gauge_phis.size() < 2)
            throw ConfigError("gauge_phis needs at least two values");
    }
}

void read_sweep(const pt::ptree& sweep, RunConfig& cfg) {
    check_keys(sweep, "sweep", {"parameter", "values"});
    const auto name = sweep.get_optional<std::string>("parameter");
    const auto values = sweep.get_optional<std::string>("values");
    if (!name || !values)
        throw ConfigError("[sweep] needs both 'parameter' and 'values'");
    Sweep s{trim(*name), {}};
    for (const std::string& v : split_list(*values))
        s.values.push_back(parse_number("values", v));
    if (s.values.empty())
        throw ConfigError("[sweep] values may not be empty");
    for (double v : s.values)
        (void)with_parameter(cfg.model, s.parameter, v);  // rejects unknown names early
    cfg.sweep = std::move(s);
}

void read_output(const pt::ptree& output, RunConfig& cfg) {
    check_keys(output, "output", {"directory", "formats"});
    if (auto dir = output.get_optional<std::string>("directory")) {
        if (trim(*dir).empty())
            throw ConfigError("output directory may not be empty");
        cfg.output = trim(*dir);
    }
    if (auto formats = output.get_optional<std::string>("formats"))
        cfg.formats = parse_formats(*formats);
}

}  // namespace

bool RunConfig::wants(Task t) const { return std::find(tasks.begin(), tasks.end(), t) != tasks.end(); }

OutputFormats parse_formats(const std::string& list) {
    OutputFormats f{false, false, false};
    const auto items = split_list(list);
    if (items.empty())
        throw ConfigError("format list may not be empty");
    for (const std::string& item : items) {
        const std::string v = lower(item);
        if (v == "csv")
            f.csv = true;
        else if (v == "json")
            f.json = true;
        else if (v == "svg")
            f.svg = true;
        else
            throw ConfigError("unknown output format '" + item + "'");
    }
    return f;
}

LadderParams with_parameter(const LadderParams& base, const std::string& name, double value) {
    LadderParams p = base;
    if (name == "num_rungs") {
        if (value != std::floor(value) || value < 2 || value > kMaxRungs)
            throw ConfigError("num_rungs must be an integer in [2, " + std::to_string(kMaxRungs) + "]");
        p.num_rungs = static_cast<int>(value);
    } else if (name == "j_leg") {
        p.j_leg = value;
    } else if (name == "j_rung") {
        p.j_rung = value;
    } else if (name == "delta") {
        p.delta = value;
    } else if (name == "phi") {
        p.phi = value;
    } else if (name == "psi") {
        p.psi = value;
    } else {
        throw ConfigError("'" + name + "' is not a model parameter");
    }
    return p;
}

RunConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    RunConfig cfg;
    cfg.tasks = {Task::Spectrum};
    for (const auto& [name, section] : tree) {
        if (section.empty() && !section.data().empty())
            throw ConfigError("key '" + name + "' outside of a section");
        if (name == "model")
            read_model(section, cfg);
        else if (name == "tasks")
            read_tasks(section, cfg);
        else if (name == "sweep")
            read_sweep(section, cfg);
        else if (name == "output")
            read_output(section, cfg);
        else
            throw ConfigError("unknown section [" + name + "]");
    }
    if (cfg.tasks.empty())
        throw ConfigError("no tasks requested");

    try {
        for (const LadderParams& p : sweep_points(cfg))
            p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

std::vector<LadderParams> sweep_points(const RunConfig& config) {
    if (!config.sweep)
        return {config.model};
    std::vector<LadderParams> points;
    points.reserve(config.sweep->values.size());
    for (double v : config.sweep->values)
        points.push_back(with_parameter(config.model, config.sweep->parameter, v));
    return points;
}

std::string task_name(Task t) {
    for (const auto& [name, task] : task_table())
        if (task == t)
            return name;
    return "unknown";
}

std::string boundary_name(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

std::string rung_type_name(RungType r) { return r == RungType::XXZNonreciprocal ? "xxz" : "heisenberg"; }

}  // namespace ladder
