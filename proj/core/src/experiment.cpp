#include "qst/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "qst/entanglement.hpp"
#include "qst/transfer_protocol.hpp"

namespace qst {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + value +
                                    "' is not a number");
    }
}

long parse_int(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + value +
                                    "' is not an integer");
    }
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, key));
    }
    return out;
}

}  // namespace

RunMode parse_run_mode(const std::string& name) {
    if (name == "fidelity") return RunMode::fidelity;
    if (name == "success") return RunMode::success;
    if (name == "concurrence") return RunMode::concurrence;
    if (name == "ed-success") return RunMode::ed_success;
    if (name == "amplitudes") return RunMode::amplitudes;
    if (name == "verify") return RunMode::verify;
    throw std::invalid_argument(
        "unknown mode '" + name +
        "'; expected fidelity, success, concurrence, ed-success, amplitudes or verify");
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format '" + name + "'; expected csv or json");
}

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::fidelity: return "fidelity";
        case RunMode::success: return "success";
        case RunMode::concurrence: return "concurrence";
        case RunMode::ed_success: return "ed-success";
        case RunMode::amplitudes: return "amplitudes";
        case RunMode::verify: return "verify";
    }
    return "?";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

int RunConfig::resolved_site() const {
    return site == 0 ? (1 << (generations - 1)) : site;
}

void RunConfig::validate() const {
    if (generations < 1 || generations > 24)
        throw std::invalid_argument("generations must lie in [1, 24]");
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("tmax must be > 0");
    if (t_steps < 2) throw std::invalid_argument("steps must be >= 2");
    const int r = resolved_site();
    const int max_site = (1 << generations) - 1;
    if (r < 1 || r > max_site)
        throw std::invalid_argument("site " + std::to_string(r) +
                                    " is outside the tree (1.." + std::to_string(max_site) +
                                    " for " + std::to_string(generations) + " generations)");
    for (const double p : wm_strengths)
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument("every p must lie in [0, 1)");
    if (!(theta >= 0.0 && theta <= M_PI + 1e-12))
        throw std::invalid_argument("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * M_PI + 1e-12))
        throw std::invalid_argument("phi must lie in [0, 2*pi)");
}

std::string RunConfig::to_config_text() const {
    std::ostringstream out;
    out << "mode = " << to_string(mode) << '\n';
    out << "generations = " << generations << '\n';
    out << "site = " << resolved_site() << '\n';
    out << "nu = " << format_double(nu) << '\n';
    out << "lambda = " << format_double(lambda) << '\n';
    out << "gamma = " << format_double(gamma) << '\n';
    out << "omega0 = " << format_double(omega0) << '\n';
    out << "tmax = " << format_double(t_max) << '\n';
    out << "steps = " << t_steps << '\n';
    out << "p = ";
    for (std::size_t i = 0; i < wm_strengths.size(); ++i) {
        if (i) out << ',';
        out << format_double(wm_strengths[i]);
    }
    out << '\n';
    out << "theta = " << format_double(theta) << '\n';
    out << "phi = " << format_double(phi) << '\n';
    out << "format = " << to_string(format) << '\n';
    out << "seed = " << seed << '\n';
    return out.str();
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.nu = 1.0;
    cfg.lambda = 0.5;
    cfg.gamma = 1.0;
    cfg.t_max = 20.0;
    cfg.t_steps = 201;
    cfg.wm_strengths = {0.2, 0.6, 0.99};
    if (name == "fig2a" || name == "fig2c") {
        cfg.mode = RunMode::fidelity;
    } else if (name == "fig3a" || name == "fig3c") {
        cfg.mode = RunMode::concurrence;
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "'; expected fig2a, fig2c, fig3a or fig3c");
    }
    cfg.generations = (name == "fig2c" || name == "fig3c") ? 8 : 4;
    cfg.site = 1 << (cfg.generations - 1);
    return cfg;
}

void apply_key_value(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "mode") config.mode = parse_run_mode(value);
    else if (key == "generations") config.generations = static_cast<int>(parse_int(value, key));
    else if (key == "site") config.site = static_cast<int>(parse_int(value, key));
    else if (key == "nu") config.nu = parse_double(value, key);
    else if (key == "lambda") config.lambda = parse_double(value, key);
    else if (key == "gamma") config.gamma = parse_double(value, key);
    else if (key == "omega0") config.omega0 = parse_double(value, key);
    else if (key == "tmax") config.t_max = parse_double(value, key);
    else if (key == "steps") config.t_steps = static_cast<int>(parse_int(value, key));
    else if (key == "p") config.wm_strengths = parse_double_list(value, key);
    else if (key == "theta") config.theta = parse_double(value, key);
    else if (key == "phi") config.phi = parse_double(value, key);
    else if (key == "format") config.format = parse_output_format(value);
    else if (key == "out") config.output_path = value;
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "preset")
        throw std::invalid_argument("'preset' must be given on the command line, not in a config file");
    else
        throw std::invalid_argument("unknown configuration key '" + key + "'");
}

void apply_config_text(RunConfig& config, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line '" + line + "' is not 'key = value'");
        apply_key_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

ResultTable run(const RunConfig& config) {
    config.validate();
    if (config.mode == RunMode::verify)
        throw std::invalid_argument("verify mode runs checks, not sweeps; use the verification API");

    const TreeSpec spec{config.generations, config.omega0, config.nu};
    const BathSpec bath{config.gamma, config.lambda};
    const std::vector<double> grid =
        linspace(0.0, config.t_max, static_cast<std::size_t>(config.t_steps));
    const AmplitudeTrajectory traj = amplitudes_analytic(grid, spec, bath);

    ResultTable table;
    if (config.mode == RunMode::amplitudes) {
        table.columns.push_back("t");
        for (int m = 1; m <= config.generations; ++m) {
            const std::string base = "C" + std::to_string(m);
            table.columns.push_back(base + "_re");
            table.columns.push_back(base + "_im");
            table.columns.push_back(base + "_abs");
        }
        table.columns.push_back("leaked_weight");
        for (std::size_t k = 0; k < traj.size(); ++k) {
            std::vector<double> row;
            row.reserve(table.columns.size());
            row.push_back(traj.times[k]);
            for (int m = 1; m <= config.generations; ++m) {
                const auto a = traj.amplitude(m, k);
                row.push_back(a.real());
                row.push_back(a.imag());
                row.push_back(std::abs(a));
            }
            row.push_back(traj.leaked_weight[k]);
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    if (config.wm_strengths.empty())
        throw std::invalid_argument("no weak-measurement strengths given; the sweep is empty");

    const int site = config.resolved_site();
    std::vector<double> f_abs(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        f_abs[k] = std::abs(transfer_amplitude(traj, site, k));

    switch (config.mode) {
        case RunMode::fidelity:
            table.columns = {"t", "p", "f_abs", "F_ave", "F_natural", "P_success"};
            break;
        case RunMode::success:
            table.columns = {"t", "p", "f_abs", "P_success"};
            break;
        case RunMode::concurrence:
            table.columns = {"t", "p", "f_abs", "C_opt", "C_natural"};
            break;
        case RunMode::ed_success:
            table.columns = {"t", "p", "f_abs", "P_ed"};
            break;
        default:
            break;
    }

    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const double f = f_abs[k];
        for (const double p : config.wm_strengths) {
            switch (config.mode) {
                case RunMode::fidelity:
                    table.rows.push_back({t, p, f, average_fidelity_closed(p, f),
                                          average_fidelity_natural(f),
                                          average_success_probability(p, f)});
                    break;
                case RunMode::success:
                    table.rows.push_back({t, p, f, average_success_probability(p, f)});
                    break;
                case RunMode::concurrence:
                    table.rows.push_back({t, p, f,
                                          optimal_concurrence_closed(config.theta, p, f),
                                          natural_concurrence(config.theta, f)});
                    break;
                case RunMode::ed_success:
                    table.rows.push_back(
                        {t, p, f, optimal_ed_success_probability(config.theta, p, f)});
                    break;
                default:
                    break;
            }
        }
    }
    return table;
}

std::string format_double(double value) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void emit_csv(const ResultTable& table, std::ostream& out) {
    if (table.rows.empty())
        throw std::invalid_argument("refusing to emit an empty table");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

void emit_json(const ResultTable& table, std::ostream& out) {
    if (table.rows.empty())
        throw std::invalid_argument("refusing to emit an empty table");
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void emit_to_file(const ResultTable& table, OutputFormat format, const std::string& path) {
    if (table.rows.empty())
        throw std::invalid_argument("refusing to emit an empty table");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (format == OutputFormat::csv)
        emit_csv(table, out);
    else
        emit_json(table, out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qst
