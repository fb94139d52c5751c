#pragma once

#include "lambdacav/atoms.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lambdacav {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 500.0;
    int steps = 2000;   // intervals; rows = steps + 1

    int points() const { return steps + 1; }
    double at(int i) const {
        return steps == 0 ? t_start
                          : t_start + (t_end - t_start) * (static_cast<double>(i) / steps);
    }
};

// Fully resolved scenario: atom, drive strengths, initial state, grids.
struct ScenarioConfig {
    std::string preset;   // empty when loaded from a file
    AtomSpec atom;
    double intensity_ratio_1 = 0.0;   // I/I_sat driving the 1-3 transition
    double intensity_ratio_2 = 0.0;
    double detuning_multiple = 0.0;   // delta13 = multiple * gamma_bar
    double delta23_multiple = 0.0;
    double nbar1 = 0.0;
    double nbar2 = 0.0;
    double phase1 = 0.0;
    double phase2 = 0.0;
    std::array<double, 3> zetas{};
    std::array<double, 3> thetas{};
    double tail_tol = 1e-12;
    TimeGrid grid;
    std::vector<double> snapshots;
    double husimi_half_width = 0.0;   // 0 = sqrt(max nbar) + 4
    double husimi_step = 0.05;

    CouplingConfig coupling() const;
};

// Strict JSON parse: unknown keys, missing keys, bad types, and invariant
// violations raise ConfigError with every problem listed.
ScenarioConfig parse_config(const std::string& json_text);

// Builtin scenario sets: "<atom>/<base>" for atom in {li6, rb87} and base in
// {state1, state2, state3, state4, raman1, raman2}; a bare base name aliases
// the li6 variant. Throws ConfigError for unknown names.
ScenarioConfig resolve_preset(const std::string& name);
bool is_preset_name(const std::string& name);
std::vector<std::string> preset_names();

struct RunOptions {
    std::string out_dir;
    bool oracle = false;
    bool emit_ns = false;
    bool has_snapshot_override = false;
    std::vector<double> snapshot_override;
    double oracle_tolerance = 1e-8;
    int oracle_points = 6;
    int threads = 0;   // 0 = hardware concurrency
};

struct RunResult {
    int exit_code = 0;   // 0 ok, 2 config error, 3 oracle beyond tolerance
    std::string message;
    std::string oracle_report_json;
};

// Executes the full sweep: observables.csv, manifest.json, optional snapshot
// files, optional oracle_report.json under options.out_dir.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options);

// The fixed observables.csv header (without the optional t_ns column).
const std::vector<std::string>& csv_columns();

} // namespace lambdacav
