#include "lambdacav/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr const char* kConfigHelp = R"(Scenario configuration (JSON object; unknown keys are errors):
  atom                 builtin name ("li6", "rb87") or inline object with
                       label, omega1, omega2, omega3 (default 1), gamma_bar,
                       time_unit_ns                                   [required]
  intensity_ratio_1    I/I_sat for the 1-3 drive, mu13 = gamma_bar*sqrt(r/2)
                                                                      [required]
  intensity_ratio_2    same for the 2-3 drive                         [required]
  nbar1, nbar2         mean photon numbers of the two modes           [required]
  phase1, phase2       coherent-amplitude phases          [default 0]
  zetas                3 moduli of the atomic superposition           [required]
  thetas               3 phases                           [default 0,0,0]
  detuning_multiple    delta13 = multiple * gamma_bar (may be negative)
                                                          [default 0]
  delta23_multiple     independent delta23 multiple       [default detuning_multiple]
  tail_tol             Poisson tail cut per mode          [default 1e-12]
  t_start, t_end       time window in units of 1/omega3   [default 0, 500]
  steps                grid intervals (rows = steps + 1)  [default 2000]
  snapshots            times for density/Husimi snapshot files  [default none]
  husimi_half_width    grid half width (0 = sqrt(max nbar) + 4)  [default 0]
  husimi_step          grid step                          [default 0.05]

Presets: li6/state1..4, li6/raman1, li6/raman2, rb87/... (bare names alias li6).
)";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dynamics of a three-level Lambda atom coupled to two cavity modes"};
    app.footer(kConfigHelp);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print builtin preset names and exit");

    auto* run = app.add_subcommand("run", "run a scenario and write its output files");
    std::string scenario, out_dir;
    bool oracle = false, emit_ns = false;
    std::vector<double> snapshots;
    int threads = 0;
    run->add_option("--scenario", scenario, "preset name or path to a JSON config")
        ->required();
    run->add_option("--out", out_dir, "output directory (created if missing)")->required();
    run->add_flag("--oracle", oracle,
                  "cross-check against the numeric eigensolver path and write "
                  "oracle_report.json (required for unequal detunings)");
    run->add_option("--snapshots", snapshots,
                    "comma-separated times overriding the config snapshot list")
        ->delimiter(',');
    run->add_flag("--ns", emit_ns, "add a t_ns column using the atom's time_unit_ns");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& name : lambdacav::preset_names()) std::cout << name << "\n";
        return 0;
    }
    if (!run->parsed()) {
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        lambdacav::ScenarioConfig config;
        if (lambdacav::is_preset_name(scenario)) {
            config = lambdacav::resolve_preset(scenario);
        } else {
            std::ifstream in(scenario);
            if (!in) {
                std::cerr << "error: \"" << scenario
                          << "\" is neither a preset nor a readable file\n";
                return 2;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            config = lambdacav::parse_config(ss.str());
        }

        lambdacav::RunOptions options;
        options.out_dir = out_dir;
        options.oracle = oracle;
        options.emit_ns = emit_ns;
        options.threads = threads;
        if (!snapshots.empty()) {
            options.has_snapshot_override = true;
            options.snapshot_override = snapshots;
        }

        const lambdacav::RunResult result = lambdacav::run_scenario(config, options);
        if (result.exit_code != 0) std::cerr << "error: " << result.message << "\n";
        return result.exit_code;
    } catch (const lambdacav::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
