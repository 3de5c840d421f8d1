#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qst {

enum class RunMode { fidelity, success, concurrence, ed_success, amplitudes, verify };
enum class OutputFormat { csv, json };

RunMode parse_run_mode(const std::string& name);
OutputFormat parse_output_format(const std::string& name);
std::string to_string(RunMode mode);
std::string to_string(OutputFormat format);

// Fully resolved sweep description. Defaults mirror the standard figure
// setups: nu = 1, lambda = 0.5, gamma = 1, deepest-generation leftmost
// target site.
struct RunConfig {
    int generations = 4;
    int site = 0;  // 0 means "auto": 2^{N-1}, the leftmost deepest site
    double nu = 1.0;
    double lambda = 0.5;
    double gamma = 1.0;
    double omega0 = 1.0;
    double t_max = 20.0;
    int t_steps = 201;
    std::vector<double> wm_strengths = {0.2, 0.6, 0.99};
    double theta = 1.5707963267948966;  // pi/2
    double phi = 0.0;
    RunMode mode = RunMode::fidelity;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  // empty: stdout
    std::uint64_t seed = 20260801;

    int resolved_site() const;
    void validate() const;  // throws std::invalid_argument with actionable text

    // key = value echo of the resolved configuration; parsing it back
    // reproduces the run exactly
    std::string to_config_text() const;

    bool operator==(const RunConfig&) const = default;
};

// Named parameter bundles: fig2a/fig2c (fidelity, N = 4/8) and
// fig3a/fig3c (concurrence, N = 4/8).
RunConfig preset_config(const std::string& name);

// Applies "key = value" lines ('#' starts a comment). Unknown keys are
// rejected with the offending line quoted.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_key_value(RunConfig& config, const std::string& key, const std::string& value);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Evaluates the sweep for the data modes; rows are emitted in (t, p) order
// and the result is a pure function of the config. The verify mode is
// handled by the verification API, not here.
ResultTable run(const RunConfig& config);

// Round-trip-exact decimal text (17 significant digits).
std::string format_double(double value);

void emit_csv(const ResultTable& table, std::ostream& out);
void emit_json(const ResultTable& table, std::ostream& out);

// Writes the table in the requested format; refuses empty tables and reports
// unwritable paths.
void emit_to_file(const ResultTable& table, OutputFormat format, const std::string& path);

}  // namespace qst
